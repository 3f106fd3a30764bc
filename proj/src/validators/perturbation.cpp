#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hypdyn/families.hpp"
#include "hypdyn/validators.hpp"

namespace hypdyn {
namespace {

double max_step_over_last_quarter(const OrbitTrace& trace) {
  const std::size_t n = trace.size();
  double worst = 0.0;
  for (std::size_t k = n - std::max<std::size_t>(1, n / 4); k < n; ++k) worst = std::max(worst, trace.steps[k].step);
  return worst;
}

std::string index_message(std::size_t n, double deviation, double cap) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "map at index %zu is inadmissible: deviation %.6g is not below the cap %.6g", n,
                deviation, cap);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Attracting maps

bool AttractingNeighborhood::contains(const HolMap& h) const {
  for (const Point w : sample_closed_ball(ball, sampling.radial, sampling.angular)) {
    Point image;
    try {
      image = eval(h, w);
    } catch (const NumericError&) {
      return false;
    }
    if (!ball.surface.contains(image) || dist(ball.surface, ball.center, image) >= t) return false;
  }
  return true;
}

AttractingNeighborhood attracting_neighborhood(const HolMap& F, const SurfaceModel& surface, Point z0, double r,
                                               BallSampling sampling) {
  const MapClass cls = classify(F, surface);
  const auto* attracting = std::get_if<AttractingInterior>(&cls);
  if (!attracting) throw UsageError("map is " + class_name(cls) + ", not attracting");
  if (dist(surface, attracting->point, z0) > 1e-9) throw UsageError("z0 is not the attracting fixed point");

  const HyperbolicBall ball(surface, z0, r);
  const std::vector<Point> samples = sample_closed_ball(ball, sampling.radial, sampling.angular);
  std::vector<Point> images;
  images.reserve(samples.size());
  for (const Point w : samples) images.push_back(eval(F, w));

  double k = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      k = std::max(k, dist(surface, images[i], images[j]) / dist(surface, samples[i], samples[j]));
    }
    // Infinitesimal pairs, kept inside the closed ball.
    for (const Point w : ball_boundary(HyperbolicBall(surface, samples[i], 1e-4), 4)) {
      if (dist(surface, z0, w) > r) continue;
      k = std::max(k, dist(surface, images[i], eval(F, w)) / dist(surface, samples[i], w));
    }
  }
  if (k >= 1.0) throw ScenarioError("measured contraction on the closed ball is " + std::to_string(k));
  return AttractingNeighborhood{ball, k, 0.5 * (k * r + r), sampling};
}

ScenarioReport attracting_left_ifs(const HolMap& F, const MapSequence& seq, Point z0, double r, std::size_t steps,
                                   const DetectorTolerances& tol) {
  const SurfaceModel& X = seq.surface();
  const AttractingNeighborhood nb = attracting_neighborhood(F, X, z0, r);
  ScenarioReport report("attracting-left");
  report.param("surface", X.name());
  report.param("radius", r);
  report.param("steps", steps);
  report.measure("k", nb.k);
  report.measure("t", nb.t);

  std::vector<double> deviation(steps);
  for (std::size_t n = 0; n < steps; ++n) deviation[n] = sup_deviation(seq.at(n), F, nb.ball, nb.sampling);
  double tail_deviation = 0.0;
  for (std::size_t n = steps - std::max<std::size_t>(1, steps / 4); n < steps; ++n) {
    tail_deviation = std::max(tail_deviation, deviation[n]);
  }
  report.measure("deviation", deviation);
  report.check_le("hypothesis_f_to_F", tail_deviation, 1e-6);

  // Center and eight points of the outer sampling circle.
  const std::vector<Point> probes = sample_closed_ball(nb.ball, 1, 8);
  const OrbitTrace trace = left_orbit(seq, probes, steps);
  std::vector<Point> iterate = probes;

  std::vector<double> tracking(steps);
  std::vector<double> bound(steps);
  double excess = -kInfinity;
  double farthest = 0.0;
  double running = 0.0;
  for (std::size_t n = 0; n < steps; ++n) {
    running = deviation[n] + nb.k * running;
    bound[n] = running;
    double worst = 0.0;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      iterate[p] = eval(F, iterate[p]);
      const Point image = trace.steps[n].images[p];
      worst = std::max(worst, dist(X, image, iterate[p]));
      farthest = std::max(farthest, dist(X, z0, image));
    }
    tracking[n] = worst;
    excess = std::max(excess, worst - running);
  }
  report.measure("tracking_error", tracking);
  report.measure("deviation_bound", bound);
  report.check_le("orbit_stays_in_closed_ball", farthest, r + 1e-12);
  report.check_le("tracking_bound_all_nu", excess, 1e-9);

  const Verdict verdict = detect(trace, tol);
  report.measure("verdict", verdict_name(verdict));
  const auto* constant = std::get_if<InteriorConstant>(&verdict);
  report.check("verdict_interior_constant", constant != nullptr);
  report.check_lt("distance_to_attracting_point", constant ? dist(X, constant->point, z0) : kInfinity, 1e-4);
  return report;
}

ScenarioReport attracting_right_ifs(const HolMap& F, const MapSequence& first, const MapSequence& second, Point z0,
                                    double r, std::size_t steps, const DetectorTolerances& tol) {
  const SurfaceModel& X = first.surface();
  const AttractingNeighborhood nb = attracting_neighborhood(F, X, z0, r);
  ScenarioReport report("attracting-right");
  report.param("steps", steps);
  report.measure("k", nb.k);
  report.measure("t", nb.t);

  const std::vector<Point> probes = sample_closed_ball(nb.ball, 1, 4);
  std::vector<Point> limits;
  const MapSequence* seqs[2] = {&first, &second};
  for (int s = 0; s < 2; ++s) {
    const std::string tag = s == 0 ? "first" : "second";
    bool inside = true;
    for (std::size_t n = 0; n < steps && inside; ++n) inside = nb.contains(seqs[s]->at(n));
    report.check(tag + "/maps_in_neighborhood", inside);

    const Verdict verdict = detect(right_orbit(*seqs[s], probes, steps), tol);
    report.measure(tag + "/verdict", verdict_name(verdict));
    const auto* constant = std::get_if<InteriorConstant>(&verdict);
    report.check(tag + "/verdict_interior_constant", constant != nullptr);
    if (constant) {
      report.measure(tag + "/limit", constant->point);
      limits.push_back(constant->point);
    }
  }
  // The limit depends on f_0; only the separation is recorded.
  if (limits.size() == 2) report.measure("limit_separation", dist(X, limits[0], limits[1]));
  return report;
}

// ---------------------------------------------------------------------------
// Compactly divergent maps

double DivergenceBudget::deviation(const HolMap& f, const HolMap& F) const {
  return sup_deviation(f, F, region, sampling);
}

DivergenceBudget divergence_budget(const HolMap& F, const SurfaceModel& surface, Point z0, std::size_t n) {
  const MapClass cls = classify(F, surface);
  if (!std::holds_alternative<CompactlyDivergentMap>(cls)) {
    throw UsageError("map is " + class_name(cls) + ", not compactly divergent");
  }
  const Point Fn = eval(power(F, static_cast<long long>(n)), z0);
  return DivergenceBudget{HyperbolicBall(surface, z0, 1.0 + dist(surface, Fn, z0)),
                          std::ldexp(1.0, -static_cast<int>(n + 1))};
}

double max_admissible_perturbation(const DivergenceBudget& budget, const HolMap& F,
                                   const std::function<HolMap(double)>& family) {
  double lo = 0.0;
  double hi = budget.cap;
  for (int i = 0; i < 200 && budget.admits(family(hi), F); ++i) {
    lo = hi;
    hi *= 2.0;
  }
  if (budget.admits(family(hi), F)) return hi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (budget.admits(family(mid), F) ? lo : hi) = mid;
  }
  return lo;
}

ScenarioReport divergence_left_ifs(const HolMap& F, const MapSequence& seq, Point z0, std::size_t steps,
                                   const DetectorTolerances& tol) {
  const SurfaceModel& X = seq.surface();
  for (std::size_t n = 0; n < steps; ++n) {
    const HolMap f = seq.at(n);
    if (f == F) continue;
    const DivergenceBudget budget = divergence_budget(F, X, z0, n);
    const double deviation = budget.deviation(f, F);
    if (!(deviation < budget.cap)) throw ScenarioError(index_message(n, deviation, budget.cap));
  }

  ScenarioReport report("divergence-left");
  report.param("surface", X.name());
  report.param("steps", steps);
  report.measure("z0", z0);

  std::vector<Point> probes{z0};
  for (const Point w : ball_boundary(HyperbolicBall(X, z0, 1.0), 2)) probes.push_back(w);
  const OrbitTrace trace = left_orbit(seq, probes, steps);

  double excess_early = -kInfinity;
  double excess_all = -kInfinity;
  double escape_margin = kInfinity;
  std::vector<double> tracking;
  for (std::size_t n = 0; n < steps; ++n) {
    const Point target = eval(power(F, static_cast<long long>(n + 1)), z0);
    const double d = dist(X, trace.steps[n].images[0], target);
    const double excess = d - (1.0 - std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n + 1, 1000))));
    if (n <= 64) {
      tracking.push_back(d);
      excess_early = std::max(excess_early, excess);
    }
    excess_all = std::max(excess_all, excess);
    // Companion probes escape at least as fast as F^{n+1}(z0), up to 1 + dist(z, z0).
    const double floor = dist(X, target, z0) - 1.0;
    for (std::size_t p = 1; p < probes.size(); ++p) {
      const double lower = floor - dist(X, probes[p], z0);
      escape_margin = std::min(escape_margin, dist(X, trace.steps[n].images[p], z0) - lower);
    }
  }
  report.measure("tracking_distance_nu_le_64", tracking);
  report.check_lt("tracking_nu_le_64", excess_early, 0.0);
  report.check_lt("tracking_all_nu", excess_all, 0.0);
  report.check_ge("companion_escape_lower_bound", escape_margin, 0.0);

  DetectorTolerances intrinsic = tol;
  intrinsic.embedded = false;
  const Verdict verdict = detect(trace, intrinsic);
  report.measure("verdict", verdict_name(verdict));
  report.check("verdict_compactly_divergent", std::holds_alternative<CompactlyDivergent>(verdict));

  if (X.kind() == SurfaceKind::HalfPlane) {
    DetectorTolerances embedded = tol;
    embedded.embedded = true;
    const Verdict boundary = detect(trace, embedded);
    const Point far = eval(power(F, static_cast<long long>(steps)), z0);
    const bool expect_infinity = std::abs(far) > 1.0 / tol.tol_boundary;
    report.measure("embedded_verdict", verdict_name(boundary));
    report.measure("expected_boundary", expect_infinity ? std::string("infinity") : std::to_string(far.real()));
    const auto* bp = std::get_if<BoundaryPoint>(&boundary);
    bool matches = false;
    if (bp) {
      matches = bp->where.at_infinity == expect_infinity &&
                (expect_infinity || std::abs(bp->where.point - Point(far.real(), 0.0)) < tol.tol_boundary);
    }
    report.check("boundary_matches_limit_of_iterates", matches);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Right orbit frozen at f_0

ScenarioReport right_constant_scenario(std::size_t steps, const DetectorTolerances& tol) {
  const SurfaceModel H = SurfaceModel::half_plane();
  const HolMap f0 = families::exp_into_horodisk();
  const HolMap shift = families::translation(1.0);
  const MapSequence seq(H, [=](std::size_t n) { return n == 0 ? f0 : shift; });

  ScenarioReport report("right-constant");
  report.param("steps", steps);
  const std::vector<Point> probes{Point(0.0, 1.0), Point(0.0, 2.0), Point(0.3, 0.5)};

  const OrbitTrace right = right_orbit(seq, probes, steps);
  double drift = 0.0;
  for (const StepRecord& rec : right.steps) {
    for (std::size_t p = 0; p < probes.size(); ++p) drift = std::max(drift, std::abs(rec.images[p] - eval(f0, probes[p])));
  }
  report.check_le("rows_equal_row_zero", drift, 1e-12);
  const Point expected = Point(0.0, 1.0) + std::exp(-2.0 * kPi);
  report.measure("R(i)", right.steps.back().images[0]);
  report.measure("expected_R(i)", expected);
  report.check_le("R(i)_closed_form", std::abs(right.steps.back().images[0] - expected), 1e-12);
  report.check_le("R(2i)_closed_form",
                  std::abs(right.steps.back().images[1] - (Point(0.0, 1.0) + std::exp(-4.0 * kPi))), 1e-12);
  const Verdict verdict = detect(right, tol);
  report.measure("right_verdict", verdict_name(verdict));
  report.check("right_not_compactly_divergent", !std::holds_alternative<CompactlyDivergent>(verdict));

  const OrbitTrace left = left_orbit(seq, probes, steps);
  std::size_t prefix = 0;
  for (std::size_t n = 1; n < left.size(); ++n) {
    if (left.steps[n].base_distance <= left.steps[n - 1].base_distance) prefix = n;
  }
  report.measure("left_final_base_distance", left.steps.back().base_distance);
  report.measure("left_nonincreasing_prefix", static_cast<double>(prefix));
  report.check_lt("left_grows_after_finite_prefix", static_cast<double>(prefix), static_cast<double>(steps / 2));
  return report;
}

// ---------------------------------------------------------------------------
// Summable perturbations of an elliptic automorphism

ScenarioReport summable_perturbation_scenario(double angle, const std::function<double(std::size_t)>& offset,
                                              std::size_t steps) {
  if (steps < 8) throw UsageError("summable perturbation scenario needs at least 8 steps");
  const SurfaceModel D = SurfaceModel::disk();
  const HolMap F = families::rotation(angle);
  const MapSequence seq(D, [=](std::size_t n) { return families::rotation(angle + offset(n)); }, F);

  ScenarioReport report("summable-perturbation");
  report.param("angle", angle);
  report.param("steps", steps);

  const Point a(0.0);
  const Point b(0.5);
  const std::size_t quarter = steps - steps / 4;
  double sum_a = 0.0;
  double sum_b = 0.0;
  double tail_a = 0.0;
  double tail_b = 0.0;
  for (std::size_t n = 0; n < steps; ++n) {
    const HolMap f = seq.at(n);
    const double da = dist(D, eval(f, a), eval(F, a));
    const double db = dist(D, eval(f, b), eval(F, b));
    sum_a += da;
    sum_b += db;
    if (n >= quarter) {
      tail_a += da;
      tail_b += db;
    }
  }
  report.measure("sum_a", sum_a);
  report.measure("sum_b", sum_b);
  report.measure("last_quarter_increment_a", tail_a);
  report.measure("last_quarter_increment_b", tail_b);
  const bool cauchy = tail_a < 1e-10 && tail_b < 1e-10;
  report.check("hypothesis_met", cauchy);
  if (!cauchy) return report;

  const std::vector<Point> probes{a, b};
  const OrbitTrace left = renormalized_left(seq, F, probes, steps);
  const OrbitTrace right = renormalized_right(seq, F, probes, steps);
  report.check_lt("renormalized_left_cauchy", max_step_over_last_quarter(left), 1e-8);
  report.check_ge("renormalized_left_nondegenerate", left.steps.back().diameter, 1e-6);
  report.check_lt("renormalized_right_cauchy", max_step_over_last_quarter(right), 1e-8);
  report.check_ge("renormalized_right_nondegenerate", right.steps.back().diameter, 1e-6);
  report.measure("left_limit_of_b", left.steps.back().images[1]);
  report.measure("right_limit_of_b", right.steps.back().images[1]);
  return report;
}

}  // namespace hypdyn
