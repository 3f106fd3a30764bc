#include <algorithm>
#include <cmath>

#include "hypdyn/holmaps.hpp"

namespace hypdyn {
namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr int kMaxPeriod = 64;
constexpr int kProbeSteps = 200;

MapClass rotation_class(double angle) {
  for (int q = 1; q <= kMaxPeriod; ++q) {
    const Point turn(std::cos(q * angle), std::sin(q * angle));
    if (std::abs(turn - Point(1.0)) < kUnitTolerance) return PeriodicAut{q};
  }
  return PseudoperiodicAut{angle};
}

MapClass classify_mobius(const Mobius& m, const SurfaceModel& surface) {
  if (m.is_identity()) return PeriodicAut{1};
  for (const ExtendedPoint& fp : fixed_points(m)) {
    if (fp.infinite) continue;
    const bool interior = surface.contains(fp.value);
    // A self-map of the punctured disk that rotates about the puncture is
    // still an automorphism, even though 0 is not on the surface.
    const bool puncture = surface.kind() == SurfaceKind::PuncturedDisk && fp.value == Point(0.0);
    if (!interior && !puncture) continue;
    const Point multiplier = derivative(HolMap(m), fp.value);
    const double modulus = std::abs(multiplier);
    if (std::abs(modulus - 1.0) <= kUnitTolerance) return rotation_class(std::arg(multiplier));
    if (puncture) continue;
    if (modulus < 1.0) return AttractingInterior{fp.value, modulus};
    return UnknownClass{"repelling interior fixed point: not a self-map"};
  }
  return CompactlyDivergentMap{};
}

MapClass classify_by_probe(const HolMap& map, const SurfaceModel& surface) {
  const Point base = surface.base_point();
  std::vector<double> base_distance;
  base_distance.reserve(kProbeSteps);
  Point z = base;
  Point previous = z;
  double last_step = kInfinity;
  try {
    for (int k = 0; k < kProbeSteps; ++k) {
      previous = z;
      z = eval(map, z);
      if (!surface.contains(z)) break;
      last_step = dist(surface, previous, z);
      base_distance.push_back(dist(surface, base, z));
    }
  } catch (const NumericError& e) {
    return UnknownClass{std::string("iterate probe failed: ") + e.what()};
  }
  if (static_cast<int>(base_distance.size()) == kProbeSteps && last_step < 1e-10) {
    const double modulus = std::abs(derivative(map, z));
    if (modulus < 1.0 - kUnitTolerance) return AttractingInterior{z, modulus};
    return UnknownClass{"orbit settles at a non-attracting point"};
  }
  if (base_distance.size() >= 8) {
    const std::size_t n = base_distance.size();
    const double early = *std::max_element(base_distance.begin(), base_distance.begin() + n / 4);
    const double late = *std::min_element(base_distance.begin() + 3 * n / 4, base_distance.end());
    if (late > early + 1.0) return CompactlyDivergentMap{};
  }
  return UnknownClass{"iterate probe inconclusive"};
}

}  // namespace

std::string class_name(const MapClass& cls) {
  static const char* names[] = {"attracting-interior", "periodic-aut", "pseudoperiodic-aut", "compactly-divergent",
                                "unknown"};
  return names[cls.index()];
}

MapClass classify(const HolMap& map, const SurfaceModel& surface) {
  if (const auto* m = map.get<Mobius>()) return classify_mobius(*m, surface);
  if (const auto* a = map.get<AnnulusAut>()) {
    // Swaps the two boundary circles and squares to the identity.
    if (a->sign == -1) return PeriodicAut{2};
    return rotation_class(a->theta);
  }
  return classify_by_probe(map, surface);
}

bool is_self_map(const HolMap& map, const SurfaceModel& surface, std::size_t samples) {
  if (samples == 0) throw UsageError("is_self_map needs at least one sample");
  for (const Point z : surface_samples(surface, samples)) {
    try {
      if (!surface.contains_with_slack(eval(map, z))) return false;
    } catch (const NumericError&) {
      return false;
    }
  }
  return true;
}

double sup_deviation(const HolMap& f, const HolMap& F, const SurfaceModel& surface, std::span<const Point> region) {
  double worst = 0.0;
  for (const Point w : region) worst = std::max(worst, dist(surface, eval(f, w), eval(F, w)));
  return worst;
}

double sup_deviation(const HolMap& f, const HolMap& F, const HyperbolicBall& region, BallSampling sampling) {
  const auto points = sample_closed_ball(region, sampling.radial, sampling.angular);
  return sup_deviation(f, F, region.surface, points);
}

}  // namespace hypdyn
