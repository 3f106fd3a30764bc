#pragma once

// Executable scenarios. Each one builds a concrete instance of a statement
// about left/right iterated function systems, measures both sides of the
// inequalities involved and returns a ScenarioReport.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypdyn/ifs.hpp"
#include "hypdyn/report.hpp"

namespace hypdyn {

// ---------------------------------------------------------------------------
// Contractions into a Bloch subdomain

/// A family of maps X -> Omega with their fixed points.
struct BlochInstance {
  MapSequence maps;
  SubdomainSpec omega;
  /// z_n, the unique fixed point of f_n.
  std::function<Point(std::size_t)> fixed_point;
  /// z_infinity when the fixed points converge; empty for families whose
  /// fixed points oscillate.
  std::optional<Point> fixed_point_limit;
  /// Measured contraction constant over the first maps of the family.
  double contraction = 1.0;
};

struct ContractionOptions {
  std::size_t pairs = 2000;
  std::uint64_t seed = 7;
  /// Surface sample count for the X -> Omega guard.
  std::size_t guard_samples = 256;
};

/// Largest observed ratio dist(f z, f w) / dist(z, w) over the maps and a
/// deterministic pseudo-random pair set (a prefix of the pair set for a
/// smaller `pairs`). Throws ScenarioError naming the first map that sends a
/// surface sample outside Omega.
double estimate_contraction(const SurfaceModel& surface, const SubdomainSpec& omega, std::span<const HolMap> maps,
                            const ContractionOptions& options = {});

/// Builds an instance, measuring the contraction over f_0..f_{measure_count-1}.
BlochInstance make_bloch_instance(MapSequence maps, SubdomainSpec omega, std::function<Point(std::size_t)> fixed_point,
                                  std::optional<Point> fixed_point_limit, std::size_t measure_count = 64,
                                  const ContractionOptions& options = {});

/// Left orbit of an instance: the image diameter must collapse, and the
/// verdict must follow the fixed points (InteriorConstant near z_infinity, or
/// anything else when they oscillate).
ScenarioReport bloch_left_ifs(const BlochInstance& instance, std::size_t steps, const DetectorTolerances& tol = {});

/// The three-term estimate
///   dist(L_n(x), z_inf) <= l^{n+1} d(x, x_0) + sum_{j<n} l^{n-j} d(x_j, x_{j+1}) + d(x_n, x_inf)
/// at every n, with d = dist and l = contraction_scale * measured constant.
ScenarioReport contraction_theorem_bound(const BlochInstance& instance, std::size_t steps, Point x,
                                         double contraction_scale = 1.0);

// ---------------------------------------------------------------------------
// Perturbations of an attracting map

struct AttractingNeighborhood {
  HyperbolicBall ball;
  double k;  // measured contraction of F on the closed ball
  double t;  // (k r + r)/2
  BallSampling sampling;

  /// h(closed ball) inside B(z0, t), tested on the ball sampling.
  bool contains(const HolMap& h) const;
};

/// Throws UsageError unless classify(F) is AttractingInterior at z0, and
/// ScenarioError when the measured k is not below 1.
AttractingNeighborhood attracting_neighborhood(const HolMap& F, const SurfaceModel& surface, Point z0, double r,
                                               BallSampling sampling = {});

/// Tracking bound dist(L_n z, F^{n+1} z) <= sum_j k^j sup dev(f_{n-j}, F) for
/// probes in the closed ball, and the final verdict at z0. A sequence that
/// does not approach F is reported as a hypothesis failure.
ScenarioReport attracting_left_ifs(const HolMap& F, const MapSequence& seq, Point z0, double r, std::size_t steps,
                                   const DetectorTolerances& tol = {});

/// Right orbits for two sequences differing only in f_0, all maps taken from
/// the attracting neighborhood; both limits are recorded.
ScenarioReport attracting_right_ifs(const HolMap& F, const MapSequence& first, const MapSequence& second, Point z0,
                                    double r, std::size_t steps, const DetectorTolerances& tol = {});

// ---------------------------------------------------------------------------
// Perturbations of a compactly divergent map

struct DivergenceBudget {
  HyperbolicBall region;  // closed ball around z0 of radius 1 + dist(F^n z0, z0)
  double cap;             // 2^{-(n+1)}
  BallSampling sampling{16, 256};

  double deviation(const HolMap& f, const HolMap& F) const;
  bool admits(const HolMap& f, const HolMap& F) const { return f == F || deviation(f, F) < cap; }
};

/// Throws UsageError unless classify(F) is CompactlyDivergentMap.
DivergenceBudget divergence_budget(const HolMap& F, const SurfaceModel& surface, Point z0, std::size_t n);

/// Supremum of eps >= 0 with budget.admits(family(eps)), by doubling then
/// 60 bisection steps.
double max_admissible_perturbation(const DivergenceBudget& budget, const HolMap& F,
                                   const std::function<HolMap(double)>& family);

/// Tracking inequality dist(L_n z0, F^{n+1} z0) < 1 - 2^{-(n+1)} at every n,
/// a lower bound on the escape of companion probes, and the final verdict.
/// Throws ScenarioError naming the first inadmissible index.
ScenarioReport divergence_left_ifs(const HolMap& F, const MapSequence& seq, Point z0, std::size_t steps,
                                   const DetectorTolerances& tol = {});

// ---------------------------------------------------------------------------
// Stitched constructions

struct OscillatingConstruction {
  MapSequence sequence;
  /// nu_0, nu_1, ..., nu_{2J+1}.
  std::vector<std::size_t> breakpoints;
  /// Image of i after each breakpoint: L_{nu_k}(i).
  std::vector<Point> breakpoint_images;
  ScenarioReport report;
};

/// Inductive search alternating the parabolic conjugates g_j with the
/// translation w -> w - 1. Throws UsageError unless 1 <= J <= 6, and
/// ScenarioError when a phase needs more than step_cap applications.
OscillatingConstruction oscillating_construction(int J, std::size_t step_cap = 10'000'000,
                                                 const DetectorTolerances& tol = {});

/// f_0(w) = i + exp(2 pi i w) followed by translations w -> w + 1.
ScenarioReport right_constant_scenario(std::size_t steps = 65, const DetectorTolerances& tol = {});

/// Rotations by angle + offset(n) against the rotation F by `angle`,
/// measured at 0 and 1/2.
ScenarioReport summable_perturbation_scenario(double angle, const std::function<double(std::size_t)>& offset,
                                              std::size_t steps);

// ---------------------------------------------------------------------------
// Registry

struct ScenarioOptions {
  std::uint64_t seed = 7;
  DetectorTolerances tolerances;
  int oscillating_J = 4;
};

/// Ids accepted by run_scenario, in the order `all` runs them.
const std::vector<std::string>& scenario_ids();
bool is_scenario_id(const std::string& id);

/// Throws UsageError for an unknown id; ScenarioError propagates.
ScenarioReport run_scenario(const std::string& id, const ScenarioOptions& options = {});

}  // namespace hypdyn
