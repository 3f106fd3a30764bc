#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "hypdyn/families.hpp"
#include "hypdyn/oracle.hpp"
#include "hypdyn/validators.hpp"

namespace hypdyn {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Disk point at hyperbolic distance at most `rho` from 0.
Point random_disk_point(Rng& rng, double rho) {
  return std::polar(std::tanh(uniform(rng, 0.0, rho)), uniform(rng, -kPi, kPi));
}

Point random_half_plane_point(Rng& rng) {
  return {uniform(rng, -3.0, 3.0), std::exp(uniform(rng, -3.0, 3.0))};
}

Point random_annulus_point(Rng& rng, double r) {
  return std::polar(r * std::pow(1.0 / r, uniform(rng, 0.02, 0.98)), uniform(rng, -kPi, kPi));
}

ScenarioReport metric_oracle(Rng& rng) {
  ScenarioReport report("metric-oracle");
  report.param("pairs", 200);

  double disk_err = 0.0;
  double half_err = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Point z = random_disk_point(rng, 4.0);
    const Point w = random_disk_point(rng, 4.0);
    disk_err = std::max(disk_err, std::abs(disk_distance(z, w) - oracle::disk_geodesic_length(z, w)));
    const Point u = random_half_plane_point(rng);
    const Point v = random_half_plane_point(rng);
    half_err = std::max(half_err, std::abs(half_plane_distance(u, v) - oracle::half_plane_geodesic_length(u, v)));
  }
  report.check_le("disk_vs_quadrature", disk_err, 1e-8);
  report.check_le("half_plane_vs_quadrature", half_err, 1e-8);

  double window_drift = 0.0;
  double annulus_err = 0.0;
  double punctured_err = 0.0;
  for (const double r : {0.1, 0.5}) {
    const SurfaceModel A = SurfaceModel::annulus(r);
    for (int k = 0; k < 100; ++k) {
      const Point z = random_annulus_point(rng, r);
      const Point w = random_annulus_point(rng, r);
      const double d = deck_minimized_distance(A, z, w, 0);
      window_drift = std::max(window_drift, std::abs(d - deck_minimized_distance(A, z, w, 2)));
      if (k < 25) annulus_err = std::max(annulus_err, std::abs(d - oracle::annulus_geodesic_length(r, z, w)));
    }
  }
  const SurfaceModel P = SurfaceModel::punctured_disk();
  for (int k = 0; k < 50; ++k) {
    const Point z = std::polar(uniform(rng, 0.01, 0.95), uniform(rng, -kPi, kPi));
    const Point w = std::polar(uniform(rng, 0.01, 0.95), uniform(rng, -kPi, kPi));
    punctured_err = std::max(punctured_err, std::abs(dist(P, z, w) - oracle::punctured_disk_geodesic_length(z, w)));
  }
  report.check_le("annulus_deck_window_plus_2", window_drift, 1e-12);
  report.check_le("annulus_vs_quadrature", annulus_err, 1e-8);
  report.check_le("punctured_disk_vs_quadrature", punctured_err, 1e-8);
  return report;
}

ScenarioReport schwarz_pick(Rng& rng) {
  ScenarioReport report("schwarz-pick");
  report.param("blaschke_products", 50);
  report.param("pairs_per_map", 50);
  report.param("automorphisms", 20);

  double excess = -kInfinity;
  for (int m = 0; m < 50; ++m) {
    const int degree = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<Point> zeros;
    for (int k = 0; k < degree; ++k) zeros.push_back(std::polar(0.9 * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, -kPi, kPi)));
    const HolMap f = HolMap::blaschke(std::polar(uniform(rng, 0.5, 1.0), uniform(rng, -kPi, kPi)), zeros);
    for (int p = 0; p < 50; ++p) {
      const Point z = random_disk_point(rng, 3.0);
      const Point w = random_disk_point(rng, 3.0);
      excess = std::max(excess, disk_distance(eval(f, z), eval(f, w)) - disk_distance(z, w));
    }
  }
  report.check_le("contraction_excess", excess, 1e-10);

  double isometry_gap = 0.0;
  for (int m = 0; m < 20; ++m) {
    const Point a = std::polar(0.9 * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, -kPi, kPi));
    const Point half_turn = std::polar(1.0, 0.5 * uniform(rng, -kPi, kPi));
    // e^{i theta} (z - a)/(1 - conj(a) z)
    const HolMap f = HolMap::mobius(half_turn, -half_turn * a, -std::conj(a) / half_turn, 1.0 / half_turn);
    for (int p = 0; p < 50; ++p) {
      const Point z = random_disk_point(rng, 3.0);
      const Point w = random_disk_point(rng, 3.0);
      isometry_gap = std::max(isometry_gap, std::abs(disk_distance(eval(f, z), eval(f, w)) - disk_distance(z, w)));
    }
  }
  report.check_le("automorphism_equality", isometry_gap, 1e-10);
  return report;
}

ScenarioReport half_scaled_oscillation(const DetectorTolerances& tol) {
  constexpr double delta = 0.1;
  constexpr std::size_t N = 64;
  const SurfaceModel D = SurfaceModel::disk();
  const MapSequence seq(D, [](std::size_t n) { return families::half_scaled(delta, n % 2 == 0 ? 0.0 : kPi); });
  const std::vector<Point> probes{Point(0.0), Point(0.3, 0.2)};
  const OrbitTrace trace = left_orbit(seq, probes, N);

  ScenarioReport report("half-scaled-oscillation");
  report.param("delta", delta);
  report.param("steps", N);

  double err0 = 0.0;
  double err1 = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    // delta (-1)^n sum_{j<=n} (-1/2)^j, summed term by term.
    double sum = 0.0;
    double term = 1.0;
    for (std::size_t j = 0; j <= n; ++j, term *= -0.5) sum += term;
    const double closed = (n % 2 == 0 ? delta : -delta) * sum;
    err0 = std::max(err0, std::abs(trace.steps[n].images[0] - closed));
    err1 = std::max(err1, std::abs(trace.steps[n].images[1] - (std::ldexp(1.0, -static_cast<int>(n + 1)) * probes[1] + closed)));
  }
  report.check_le("probe0_closed_form", err0, 1e-12);
  report.check_le("probe1_closed_form", err1, 1e-12);

  const Verdict verdict = detect(trace, tol);
  report.measure("verdict", verdict_name(verdict));
  const auto* osc = std::get_if<Oscillating>(&verdict);
  report.check("verdict_oscillating", osc != nullptr);
  if (osc) {
    report.measure("cluster_first", osc->first);
    report.measure("cluster_second", osc->second);
  }
  report.measure("expected_gap", 4.0 * delta / 3.0);
  report.check_le("gap_error", osc ? std::abs(osc->gap - 4.0 * delta / 3.0) : kInfinity, 1e-3);
  return report;
}

BlochInstance shifted_halving(std::function<Point(std::size_t)> shift, std::optional<Point> limit,
                              std::uint64_t seed) {
  const SurfaceModel D = SurfaceModel::disk();
  MapSequence seq(D, [shift](std::size_t n) { return families::half_scaled_shift(shift(n)); });
  ContractionOptions opts;
  opts.seed = seed;
  return make_bloch_instance(std::move(seq), SubdomainSpec::euclidean_disk(0.0, 0.86),
                             [shift](std::size_t n) { return 2.0 * shift(n); }, limit, 64, opts);
}

const Point kShiftLimit(0.15, 0.1);

Point converging_shift(std::size_t n) {
  const double s = static_cast<double>(n + 1);
  return kShiftLimit + 0.1 / (s * s);
}

ScenarioReport bloch_left(const ScenarioOptions& options, std::uint64_t seed) {
  constexpr std::size_t N = 1024;
  ScenarioReport report("bloch-left");
  report.param("steps", N);

  const BlochInstance converging = shifted_halving(converging_shift, 2.0 * kShiftLimit, seed);
  report.merge(bloch_left_ifs(converging, N, options.tolerances), "converging");

  const BlochInstance constant =
      shifted_halving([](std::size_t) { return kShiftLimit; }, 2.0 * kShiftLimit, seed);
  report.merge(bloch_left_ifs(constant, N, options.tolerances), "constant");

  for (const double c : {0.1, 0.35}) {
    const BlochInstance swinging =
        shifted_halving([c](std::size_t n) { return Point(n % 2 == 0 ? c : -c); }, std::nullopt, seed);
    report.merge(bloch_left_ifs(swinging, N, options.tolerances), c < 0.2 ? "swing_0.1" : "swing_0.35");
  }
  return report;
}

ScenarioReport contraction_bound(std::uint64_t seed) {
  constexpr std::size_t N = 1024;
  const Point x(-0.6, 0.0);
  ScenarioReport report("contraction-bound");
  const BlochInstance converging = shifted_halving(converging_shift, 2.0 * kShiftLimit, seed);
  report.merge(contraction_theorem_bound(converging, N, x), "converging");
  const BlochInstance constant =
      shifted_halving([](std::size_t) { return kShiftLimit; }, 2.0 * kShiftLimit, seed);
  report.merge(contraction_theorem_bound(constant, N, x), "constant");

  // With half the contraction constant the bound has to break somewhere.
  const ScenarioReport halved = contraction_theorem_bound(converging, N, x, 0.5);
  report.merge_measured(halved, "halved");
  report.check_gt("halved/excess_above_slack", halved.assertion("bound_all_nu").lhs, 1e-9);
  return report;
}

ScenarioReport attracting_left(const ScenarioOptions& options) {
  constexpr std::size_t N = 129;
  const SurfaceModel D = SurfaceModel::disk();
  const HolMap F = families::half_scaled_shift(0.0);
  ScenarioReport report("attracting-left");

  const MapSequence summable(
      D, [](std::size_t n) { return families::half_scaled_shift(std::ldexp(1.0, -static_cast<int>(n) - 2)); }, F);
  report.merge(attracting_left_ifs(F, summable, 0.0, 1.0, N, options.tolerances), "summable_shift");
  report.merge(attracting_left_ifs(F, MapSequence::constant(D, F), 0.0, 1.0, N, options.tolerances), "constant");

  // Alternating small translates never approach F: the hypothesis must fail.
  const MapSequence alternating(D, [](std::size_t n) { return families::half_scaled(0.05, n % 2 == 0 ? 0.0 : kPi); });
  const ScenarioReport control = attracting_left_ifs(F, alternating, 0.0, 1.0, N, options.tolerances);
  report.merge_measured(control, "alternating_control");
  report.check("alternating_control/hypothesis_failure_reported",
               !control.assertion("hypothesis_f_to_F").pass && !control.pass());
  return report;
}

ScenarioReport attracting_right(const ScenarioOptions& options) {
  constexpr std::size_t N = 64;
  const SurfaceModel D = SurfaceModel::disk();
  const HolMap F = families::half_scaled_shift(0.0);
  auto with_first = [&](Point first_shift) {
    return MapSequence(D, [first_shift](std::size_t n) {
      return n == 0 ? families::half_scaled_shift(first_shift) : families::half_scaled(0.05, n % 2 == 0 ? 0.0 : kPi);
    });
  };
  ScenarioReport report = attracting_right_ifs(F, with_first(0.2), with_first(-0.2), 0.0, 1.0, N, options.tolerances);
  report.param("first_shifts", nlohmann::ordered_json::array({0.2, -0.2}));
  return report;
}

ScenarioReport divergence_left(const ScenarioOptions& options) {
  constexpr std::size_t N = 4096;
  constexpr std::size_t kPerturbed = 65;
  const SurfaceModel H = SurfaceModel::half_plane();
  const HolMap F = families::translation(-1.0);
  const Point z0(0.0, 1.0);

  // Half of the largest admissible shift at each of the first 65 steps;
  // beyond that the caps are below the resolution of w - 1.
  std::vector<HolMap> maps;
  std::vector<double> eps;
  for (std::size_t n = 0; n < kPerturbed; ++n) {
    const DivergenceBudget budget = divergence_budget(F, H, z0, n);
    const double e =
        0.5 * max_admissible_perturbation(budget, F, [](double s) { return families::translation(s - 1.0); });
    eps.push_back(e);
    maps.push_back(families::translation(e - 1.0));
  }
  const MapSequence seq = MapSequence::from_list(H, maps, F);
  ScenarioReport report = divergence_left_ifs(F, seq, z0, N, options.tolerances);
  report.measure("epsilon", eps);
  return report;
}

ScenarioReport summable_perturbation() {
  constexpr std::size_t N = 64;
  ScenarioReport report("summable-perturbation");
  report.merge(summable_perturbation_scenario(1.0, [](std::size_t n) { return std::ldexp(1.0, -static_cast<int>(n)); }, N),
               "summable");
  report.merge(summable_perturbation_scenario(1.0, [](std::size_t) { return 0.0; }, N), "unperturbed");
  const ScenarioReport harmonic =
      summable_perturbation_scenario(1.0, [](std::size_t n) { return 1.0 / static_cast<double>(n + 1); }, N);
  report.merge_measured(harmonic, "harmonic");
  report.check("harmonic/hypothesis_not_met", !harmonic.assertion("hypothesis_met").pass);
  return report;
}

}  // namespace

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids{
      "metric-oracle",    "schwarz-pick",     "half-scaled-oscillation", "bloch-left",
      "contraction-bound", "attracting-left", "attracting-right",        "divergence-left",
      "oscillating",      "right-constant",   "summable-perturbation"};
  return ids;
}

bool is_scenario_id(const std::string& id) {
  const auto& ids = scenario_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

ScenarioReport run_scenario(const std::string& id, const ScenarioOptions& options) {
  const auto& ids = scenario_ids();
  const auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) throw UsageError("unknown scenario '" + id + "'");
  // Each scenario gets its own stream, independent of which others run.
  const auto index = static_cast<std::uint64_t>(it - ids.begin());
  const std::uint64_t seed = options.seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  Rng rng(seed);

  ScenarioReport report(id);
  if (id == "metric-oracle") {
    report = metric_oracle(rng);
  } else if (id == "schwarz-pick") {
    report = schwarz_pick(rng);
  } else if (id == "half-scaled-oscillation") {
    report = half_scaled_oscillation(options.tolerances);
  } else if (id == "bloch-left") {
    report = bloch_left(options, seed);
  } else if (id == "contraction-bound") {
    report = contraction_bound(seed);
  } else if (id == "attracting-left") {
    report = attracting_left(options);
  } else if (id == "attracting-right") {
    report = attracting_right(options);
  } else if (id == "divergence-left") {
    report = divergence_left(options);
  } else if (id == "oscillating") {
    report = oscillating_construction(options.oscillating_J, 10'000'000, options.tolerances).report;
  } else if (id == "right-constant") {
    report = right_constant_scenario(65, options.tolerances);
  } else {
    report = summable_perturbation();
  }
  report.param("seed", options.seed);
  return report;
}

}  // namespace hypdyn
