// Acceptance suite: one PASS/FAIL line per criterion. Criteria 1-9 read the
// named assertions of the scenario reports and additionally require each
// assertion's threshold to equal the pinned value below, so a loosened
// tolerance inside a scenario shows up here as a failure. Criterion 10 runs
// the built tool twice.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hypdyn/validators.hpp"

#ifndef HYPDYN_EXE
#error "HYPDYN_EXE must name the built hypdyn executable"
#endif

namespace fs = std::filesystem;
using hypdyn::ScenarioReport;

namespace {

struct Pinned {
  std::string scenario;
  std::string assertion;
  std::string op;
  double rhs;
};

struct Criterion {
  int number;
  std::string title;
  std::vector<Pinned> checks;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1,
       "metric oracle agreement",
       {{"metric-oracle", "disk_vs_quadrature", "le", 1e-8},
        {"metric-oracle", "half_plane_vs_quadrature", "le", 1e-8},
        {"metric-oracle", "annulus_deck_window_plus_2", "le", 1e-12}}},
      {2,
       "Schwarz-Pick suite",
       {{"schwarz-pick", "contraction_excess", "le", 1e-10},
        {"schwarz-pick", "automorphism_equality", "le", 1e-10}}},
      {3,
       "half-scaled oscillation closed form",
       {{"half-scaled-oscillation", "probe0_closed_form", "le", 1e-12},
        {"half-scaled-oscillation", "verdict_oscillating", "true", 1.0},
        {"half-scaled-oscillation", "gap_error", "le", 1e-3}}},
      {4,
       "fixed-point biconditional and three-term bound",
       {{"bloch-left", "converging/verdict_interior_constant", "true", 1.0},
        {"bloch-left", "converging/distance_to_fixed_point_limit", "lt", 1e-4},
        {"bloch-left", "swing_0.1/verdict_not_interior_constant", "true", 1.0},
        {"bloch-left", "swing_0.35/verdict_not_interior_constant", "true", 1.0},
        {"contraction-bound", "converging/bound_all_nu", "le", 1e-9},
        {"contraction-bound", "constant/bound_all_nu", "le", 1e-9}}},
      {5,
       "attracting perturbation tracking",
       {{"attracting-left", "summable_shift/tracking_bound_all_nu", "le", 1e-9},
        {"attracting-left", "summable_shift/verdict_interior_constant", "true", 1.0},
        {"attracting-left", "summable_shift/distance_to_attracting_point", "lt", 1e-4}}},
      {6,
       "divergent perturbation tracking",
       {{"divergence-left", "tracking_nu_le_64", "lt", 0.0},
        {"divergence-left", "verdict_compactly_divergent", "true", 1.0},
        {"divergence-left", "boundary_matches_limit_of_iterates", "true", 1.0}}},
      {7,
       "stitched parabolic construction, J=4",
       {{"oscillating", "spacing_c", "true", 1.0},
        {"oscillating", "layout_d", "true", 1.0},
        {"oscillating", "j=0/near_zero", "lt", 1.0},
        {"oscillating", "j=1/near_zero", "lt", 0.5},
        {"oscillating", "j=1/far_out", "gt", 1.0},
        {"oscillating", "j=2/near_zero", "lt", 0.25},
        {"oscillating", "j=2/far_out", "gt", 2.0},
        {"oscillating", "j=3/near_zero", "lt", 0.125},
        {"oscillating", "j=3/far_out", "gt", 3.0},
        {"oscillating", "j=4/near_zero", "lt", 0.0625},
        {"oscillating", "j=4/far_out", "gt", 4.0},
        {"oscillating", "verdict_compactly_divergent", "true", 1.0},
        {"oscillating", "no_single_boundary_limit", "true", 1.0}}},
      {8,
       "right orbit frozen at f_0",
       {{"right-constant", "rows_equal_row_zero", "le", 1e-12},
        {"right-constant", "left_grows_after_finite_prefix", "lt", 32.0}}},
      {9,
       "summable rotation perturbations",
       {{"summable-perturbation", "summable/renormalized_left_cauchy", "lt", 1e-8},
        {"summable-perturbation", "summable/renormalized_left_nondegenerate", "ge", 1e-6},
        {"summable-perturbation", "summable/renormalized_right_cauchy", "lt", 1e-8},
        {"summable-perturbation", "summable/renormalized_right_nondegenerate", "ge", 1e-6},
        {"summable-perturbation", "harmonic/hypothesis_not_met", "true", 1.0}}},
  };
  return list;
}

struct Outcome {
  bool ok = false;
  std::string detail;
  double seconds = 0.0;
};

class ReportCache {
 public:
  // Scenario time is charged to the first criterion that needs it.
  const ScenarioReport* get(const std::string& id, std::string& error, double& seconds) {
    if (auto it = reports_.find(id); it != reports_.end()) return &it->second;
    if (auto it = errors_.find(id); it != errors_.end()) {
      error = it->second;
      return nullptr;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      hypdyn::ScenarioOptions options;
      options.seed = 7;
      options.oscillating_J = 4;
      auto [it, inserted] = reports_.emplace(id, hypdyn::run_scenario(id, options));
      seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return &it->second;
    } catch (const std::exception& e) {
      seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      errors_[id] = e.what();
      error = e.what();
      return nullptr;
    }
  }

 private:
  std::map<std::string, ScenarioReport> reports_;
  std::map<std::string, std::string> errors_;
};

Outcome evaluate(const Criterion& c, ReportCache& cache) {
  Outcome out{true, {}, 0.0};
  std::ostringstream detail;
  for (const Pinned& p : c.checks) {
    std::string error;
    const ScenarioReport* report = cache.get(p.scenario, error, out.seconds);
    if (!report) {
      out.ok = false;
      detail << " [" << p.scenario << " aborted: " << error << "]";
      continue;
    }
    try {
      const auto& a = report->assertion(p.assertion);
      if (a.op != p.op || a.rhs != p.rhs) {
        out.ok = false;
        detail << " [" << p.assertion << " threshold " << a.op << ' ' << a.rhs << " differs from pinned " << p.op << ' '
               << p.rhs << "]";
      } else if (!a.pass) {
        out.ok = false;
        detail << " [" << p.assertion << ": " << a.lhs << ' ' << a.op << ' ' << a.rhs << " fails]";
      }
    } catch (const std::out_of_range&) {
      out.ok = false;
      detail << " [" << p.scenario << " has no assertion " << p.assertion << "]";
    }
  }
  out.detail = detail.str();
  return out;
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  if (!fs::exists(dir)) return files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::ifstream in(entry.path(), std::ios::binary);
    files[entry.path().filename().string()] = std::string(std::istreambuf_iterator<char>(in), {});
  }
  return files;
}

Outcome determinism() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const fs::path root = fs::temp_directory_path() / "hypdyn_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::map<std::string, std::string>> runs;
  for (const char* name : {"first", "second"}) {
    const fs::path dir = root / name;
    fs::create_directories(dir);
    const std::string command = std::string("\"") + HYPDYN_EXE + "\" validate all --seed 7 --out \"" + dir.string() +
                                "\" > \"" + (root / (std::string(name) + ".log")).string() + "\" 2>&1";
    const int status = std::system(command.c_str());
    if (status != 0) out.detail += " [" + std::string(name) + " run exited with status " + std::to_string(status) + "]";
    runs.push_back(read_dir(dir));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::size_t expected = hypdyn::scenario_ids().size();
  if (runs[0].size() != expected) {
    out.detail += " [expected " + std::to_string(expected) + " reports, got " + std::to_string(runs[0].size()) + "]";
  }
  out.ok = out.detail.empty() && runs[0] == runs[1];
  if (out.detail.empty() && runs[0] != runs[1]) out.detail = " [reports differ between runs]";
  return out;
}

}  // namespace

int main() {
  ReportCache cache;
  int failures = 0;
  auto print = [&](int number, const std::string& title, const Outcome& o) {
    // Each criterion must finish within a minute.
    const bool ok = o.ok && o.seconds < 60.0;
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s (%.2f s)%s\n", ok ? "PASS" : "FAIL", number, title.c_str(), o.seconds,
                o.detail.c_str());
    std::fflush(stdout);
  };
  for (const Criterion& c : criteria()) print(c.number, c.title, evaluate(c, cache));
  print(10, "validate all is byte-identical across runs", determinism());
  return failures == 0 ? 0 : 1;
}
