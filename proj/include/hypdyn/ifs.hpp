#pragma once

// Left and right iterated function systems over probe sets, and the verdict
// detectors applied to the resulting traces.
//
//   left:  L_n = f_n o f_{n-1} o ... o f_0   (new map applied outside)
//   right: R_n = f_0 o f_1 o ... o f_n       (new map applied inside)

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hypdyn/holmaps.hpp"

namespace hypdyn {

/// A generated map failed the self-map guard.
class GuardError : public std::runtime_error {
 public:
  GuardError(std::size_t index, const std::string& what);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Evaluation failed while building a trace.
class OrbitError : public std::runtime_error {
 public:
  OrbitError(std::size_t step, const std::string& what);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// n -> f_n on a fixed surface, optionally with a declared limit map.
class MapSequence {
 public:
  using Generator = std::function<HolMap(std::size_t)>;

  MapSequence(SurfaceModel surface, Generator generator, std::optional<HolMap> limit = std::nullopt);

  static MapSequence constant(SurfaceModel surface, HolMap map);
  /// maps[n] for n < size, then `tail` (the last listed map when omitted).
  static MapSequence from_list(SurfaceModel surface, std::vector<HolMap> maps,
                               std::optional<HolMap> tail = std::nullopt);

  const SurfaceModel& surface() const { return surface_; }
  const std::optional<HolMap>& limit() const { return limit_; }

  HolMap at(std::size_t n) const { return generator_(n); }
  /// at(n) after the 64-point self-map guard; results are cached per index.
  /// Throws GuardError naming n.
  HolMap checked(std::size_t n) const;

  static constexpr std::size_t kGuardSamples = 64;

 private:
  struct GuardCache {
    std::mutex mutex;
    std::map<std::size_t, bool> passed;
  };

  SurfaceModel surface_;
  Generator generator_;
  std::optional<HolMap> limit_;
  std::shared_ptr<GuardCache> cache_;
};

enum class Side { Left, Right };

struct StepRecord {
  std::vector<Point> images;
  double diameter = 0.0;       // max pairwise distance among images
  double step = 0.0;           // dist(current(z0), previous(z0))
  double base_distance = 0.0;  // dist(current(z0), z0)
};

struct OrbitTrace {
  Side side = Side::Left;
  SurfaceModel surface = SurfaceModel::disk();
  std::vector<Point> probes;
  std::vector<StepRecord> steps;

  std::size_t size() const { return steps.size(); }
};

struct OrbitOptions {
  bool guard_self_maps = true;
};

/// Records n = 0..steps-1 by forward application, O(steps * probes).
/// Throws UsageError for no probes or zero steps, DomainError for
/// off-surface probes, GuardError and OrbitError as above.
OrbitTrace left_orbit(const MapSequence& seq, std::span<const Point> probes, std::size_t steps,
                      OrbitOptions options = {});

enum class RightStrategy {
  RunningComposite,  // R_n = R_{n-1} o f_n, reduced whenever possible
  Reapply,           // apply f_n, ..., f_0 to the probes afresh each step
};

OrbitTrace right_orbit(const MapSequence& seq, std::span<const Point> probes, std::size_t steps,
                       RightStrategy strategy = RightStrategy::RunningComposite, OrbitOptions options = {});

/// Record n holds F^{-(n+1)} o L_n on the probes. F must be invertible.
OrbitTrace renormalized_left(const MapSequence& seq, const HolMap& F, std::span<const Point> probes,
                             std::size_t steps, OrbitOptions options = {});

/// Record n holds R_n o F^{-(n+1)} on the probes. F must be invertible.
OrbitTrace renormalized_right(const MapSequence& seq, const HolMap& F, std::span<const Point> probes,
                              std::size_t steps, OrbitOptions options = {});

/// (n, base distance) for every record.
std::vector<std::pair<std::size_t, double>> divergence_profile(const OrbitTrace& trace);

// ---------------------------------------------------------------------------
// Verdicts

/// A boundary point of the surface; `at_infinity` only on the half-plane.
struct BoundaryCoordinate {
  Point point;
  bool at_infinity = false;
};

struct InteriorConstant {
  Point point;
  double residual;
};
struct BoundaryPoint {
  BoundaryCoordinate where;
  double residual;
};
struct CompactlyDivergent {
  double growth_rate;  // mean base-distance increase per step over the window
};
struct Oscillating {
  Point first;
  Point second;
  double gap;
};
struct Undecided {
  std::string reason;
};
using Verdict = std::variant<InteriorConstant, BoundaryPoint, CompactlyDivergent, Oscillating, Undecided>;

std::string verdict_name(const Verdict& verdict);

struct DetectorTolerances {
  double tol_diam = 1e-6;
  double tol_step = 1e-8;
  double tol_gap = 1e-2;
  /// Euclidean closeness to a boundary point; the half-plane point at
  /// infinity needs |z| > 1/tol_boundary.
  double tol_boundary = 1e-3;
  double window_fraction = 0.25;
  std::size_t min_window = 32;
  /// Escape ladder: base distance must pass 1, 2, ..., ladder_top somewhere
  /// in the trace and, inside the detector window, never be below
  /// threshold - 0.5 after passing it.
  int ladder_top = 8;
  /// Treat the surface as a domain in the Riemann sphere and report
  /// boundary convergence as BoundaryPoint.
  bool embedded = false;
};

/// Number of trailing records the detector inspects.
std::size_t detector_window(std::size_t trace_size, const DetectorTolerances& tol);

/// True when the base-distance column satisfies the escape ladder; records
/// before window_begin only count for the crossings.
bool escape_ladder_holds(std::span<const double> base_distance, int ladder_top, std::size_t window_begin = 0);

Verdict detect(const OrbitTrace& trace, const DetectorTolerances& tol = {});

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kTraceCsvHeader = "nu,probe,re,im,diam,step,base_dist";

/// One row per (record, probe); numbers printed with 17 significant digits.
void write_trace_csv(const OrbitTrace& trace, std::ostream& out);

}  // namespace hypdyn
