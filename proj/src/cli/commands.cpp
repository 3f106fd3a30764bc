#include <cstdio>
#include <filesystem>
#include <future>
#include <ostream>
#include <sstream>

#include "hypdyn/cli.hpp"
#include "hypdyn/validators.hpp"

namespace hypdyn::cli {
namespace {

std::string join(const std::string& dir, const std::string& name) {
  const std::filesystem::path p(name);
  return p.is_absolute() ? name : (std::filesystem::path(dir) / p).string();
}

DetectorTolerances with_overrides(DetectorTolerances tol, const GlobalOptions& options) {
  if (options.tol_diam) tol.tol_diam = *options.tol_diam;
  if (options.tol_step) tol.tol_step = *options.tol_step;
  if (options.tol_gap) tol.tol_gap = *options.tol_gap;
  for (const double t : {tol.tol_diam, tol.tol_step, tol.tol_gap}) {
    if (!(t > 0.0)) throw UsageError("tolerances must be positive");
  }
  return tol;
}

std::string describe(const Verdict& verdict) {
  char buf[200];
  if (const auto* c = std::get_if<InteriorConstant>(&verdict)) {
    std::snprintf(buf, sizeof buf, "interior-constant (%.12g, %.12g) residual %.3g", c->point.real(),
                  c->point.imag(), c->residual);
  } else if (const auto* b = std::get_if<BoundaryPoint>(&verdict)) {
    if (b->where.at_infinity) {
      std::snprintf(buf, sizeof buf, "boundary-point infinity");
    } else {
      std::snprintf(buf, sizeof buf, "boundary-point (%.12g, %.12g)", b->where.point.real(), b->where.point.imag());
    }
  } else if (const auto* d = std::get_if<CompactlyDivergent>(&verdict)) {
    std::snprintf(buf, sizeof buf, "compactly-divergent growth %.6g", d->growth_rate);
  } else if (const auto* o = std::get_if<Oscillating>(&verdict)) {
    std::snprintf(buf, sizeof buf, "oscillating (%.9g, %.9g) <-> (%.9g, %.9g) gap %.9g", o->first.real(),
                  o->first.imag(), o->second.real(), o->second.imag(), o->gap);
  } else {
    return "undecided: " + std::get<Undecided>(verdict).reason;
  }
  return buf;
}

struct Outcome {
  std::string id;
  std::optional<ScenarioReport> report;
  std::string error;
};

}  // namespace

int cmd_dist(const std::string& surface_name, double inner_radius, const std::string& z, const std::string& w,
             std::ostream& out, std::ostream& err) {
  try {
    const SurfaceModel surface = SurfaceModel::from_name(surface_name, inner_radius);
    const double d = dist(surface, parse_point(z), parse_point(w));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", d);
    out << buf << '\n';
    return exit_code::kOk;
  } catch (const std::exception& e) {
    err << "dist: " << e.what() << '\n';
    return exit_code::kUsage;
  }
}

int cmd_orbit(const std::string& config_path, const GlobalOptions& options, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = load_config(config_path);
    config.tolerances = with_overrides(config.tolerances, options);
  } catch (const std::ios_base::failure& e) {
    err << "orbit: " << e.what() << '\n';
    return exit_code::kIo;
  } catch (const std::exception& e) {
    err << "orbit: " << config_path << ": " << e.what() << '\n';
    return exit_code::kUsage;
  }

  OrbitTrace trace;
  try {
    const MapSequence seq = build_sequence(config.surface, config.sequence);
    trace = config.side == Side::Left ? left_orbit(seq, config.probes, config.steps)
                                      : right_orbit(seq, config.probes, config.steps);
  } catch (const GuardError& e) {
    err << "orbit: map index " << e.index() << " failed the self-map guard: " << e.what() << '\n';
    return exit_code::kGuard;
  } catch (const OrbitError& e) {
    err << "orbit: evaluation failed at step " << e.step() << ": " << e.what() << '\n';
    return exit_code::kFail;
  }

  try {
    std::ostringstream csv;
    write_trace_csv(trace, csv);
    const std::string csv_path = join(options.out, config.output.csv);
    write_atomically(csv_path, csv.str());
    out << "wrote " << csv_path << '\n';
    if (options.plot) {
      const std::string svg_path = join(options.out, config.output.svg);
      write_atomically(svg_path, trace_svg(trace));
      out << "wrote " << svg_path << '\n';
    }
  } catch (const std::exception& e) {
    err << "orbit: " << e.what() << '\n';
    return exit_code::kIo;
  }
  out << "verdict: " << describe(detect(trace, config.tolerances)) << '\n';
  return exit_code::kOk;
}

int cmd_validate(const std::string& id, int J, const GlobalOptions& options, std::ostream& out, std::ostream& err) {
  if (id != "all" && !is_scenario_id(id)) {
    err << "validate: unknown scenario '" << id << "'; known:";
    for (const auto& known : scenario_ids()) err << ' ' << known;
    err << " all\n";
    return exit_code::kUsage;
  }
  ScenarioOptions scenario_options;
  try {
    scenario_options.seed = options.seed;
    scenario_options.tolerances = with_overrides(DetectorTolerances{}, options);
    scenario_options.oscillating_J = J;
    if (J < 1 || J > 6) throw UsageError("--J must lie in 1..6");
  } catch (const std::exception& e) {
    err << "validate: " << e.what() << '\n';
    return exit_code::kUsage;
  }

  const std::vector<std::string> ids = id == "all" ? scenario_ids() : std::vector<std::string>{id};
  std::vector<std::future<Outcome>> jobs;
  for (const auto& sid : ids) {
    jobs.push_back(std::async(std::launch::async, [sid, scenario_options]() {
      Outcome o{sid, std::nullopt, {}};
      try {
        o.report = run_scenario(sid, scenario_options);
      } catch (const std::exception& e) {
        o.error = e.what();
      }
      return o;
    }));
  }

  int status = exit_code::kOk;
  for (auto& job : jobs) {
    const Outcome o = job.get();
    if (!o.report) {
      err << "validate: scenario " << o.id << " aborted: " << o.error << '\n';
      out << "ERROR " << o.id << '\n';
      status = exit_code::kScenario;
      continue;
    }
    try {
      write_atomically(join(options.out, o.id + ".json"), o.report->to_json().dump(2) + "\n");
    } catch (const std::exception& e) {
      err << "validate: " << e.what() << '\n';
      return exit_code::kIo;
    }
    out << (o.report->pass() ? "PASS " : "FAIL ") << o.id << '\n';
    if (!o.report->pass()) {
      for (const Assertion& a : o.report->assertions()) {
        if (!a.pass) out << "  failed " << a.name << ": lhs " << a.lhs << ' ' << a.op << " rhs " << a.rhs << '\n';
      }
      if (status == exit_code::kOk) status = exit_code::kFail;
    }
  }
  return status;
}

}  // namespace hypdyn::cli
