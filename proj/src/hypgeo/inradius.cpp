#include "hypdyn/hypgeo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hypdyn {
namespace {

bool ball_inside(const SurfaceModel& surface, const SubdomainSpec& domain, Point center, double radius,
                 std::size_t samples) {
  if (radius == 0.0) return true;
  const HyperbolicBall ball(surface, center, radius);
  for (const Point p : ball_boundary(ball, samples)) {
    if (!domain.contains(surface, p)) return false;
  }
  return true;
}

[[noreturn]] void outside_domain(Point z) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "point (" << z.real() << ", " << z.imag() << ") is not in the subdomain";
  throw DomainError(msg.str());
}

}  // namespace

double inradius(const SurfaceModel& surface, const SubdomainSpec& domain, Point z,
                const InradiusOptions& options) {
  surface.require(z);
  if (!domain.contains(surface, z)) outside_domain(z);
  if (ball_inside(surface, domain, z, options.cap, options.fine_samples)) return kInfinity;

  // Coarse pass. The coarse boundary sample is a subset of the fine one, so
  // the coarse answer can only overestimate the fine one.
  double lo = 0.0;
  double hi = options.cap;
  for (int step = 0; step < options.bisection_steps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (ball_inside(surface, domain, z, mid, options.coarse_samples)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Fine pass: back off from the coarse value until the fine sample accepts
  // the radius, then bisect the remaining bracket.
  hi = lo;
  double backoff = options.refine_below;
  lo = std::max(0.0, hi - backoff);
  while (lo > 0.0 && !ball_inside(surface, domain, z, lo, options.fine_samples)) {
    hi = lo;
    backoff *= 2.0;
    lo = std::max(0.0, hi - backoff);
  }
  for (int step = 0; step < options.bisection_steps && hi - lo > 1e-13 * std::max(1.0, hi); ++step) {
    const double mid = 0.5 * (lo + hi);
    if (ball_inside(surface, domain, z, mid, options.fine_samples)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (ball_inside(surface, domain, z, hi, options.fine_samples)) return hi;
  return lo;
}

double bloch_radius(const SurfaceModel& surface, const SubdomainSpec& domain, std::span<const Point> grid,
                    const InradiusOptions& options) {
  if (grid.empty()) throw UsageError("bloch_radius needs a nonempty grid");
  double best = 0.0;
  for (const Point z : grid) {
    best = std::max(best, inradius(surface, domain, z, options));
    if (std::isinf(best)) break;
  }
  return best;
}

}  // namespace hypdyn
