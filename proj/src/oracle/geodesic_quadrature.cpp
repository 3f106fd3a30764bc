#include "hypdyn/oracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace hypdyn::oracle {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// The rule's error estimate is not scale invariant (it stalls on intervals
// of width ~1e-20), so every integral is mapped onto [0, 1] first. Densities
// near the disk boundary carry ~1e-12 relative rounding noise, which bounds
// the usable tolerance.
template <class F>
double integrate(F f, double a, double b) {
  double error = 0.0;
  const double width = b - a;
  auto unit = [&](double s) { return width * f(a + width * s); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(unit, 0.0, 1.0, 15, 1e-11, &error);
}

// Integral over [a, b] with 0 < a < b, split at a, 2a, 4a, ... so that a
// singularity at 0 is resolved by well-conditioned pieces.
template <class F>
double graded(F f, double a, double b) {
  // An endpoint on the singularity itself: the length is unbounded.
  if (!(a > 0.0)) return std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (double lo = a; lo < b;) {
    const double hi = std::min(2.0 * lo, b);
    total += integrate(f, lo, hi);
    lo = hi;
  }
  return total;
}

}  // namespace

double disk_geodesic_length(Point z, Point w) {
  if (z == w) return 0.0;
  const Point target = (w - z) / (1.0 - std::conj(z) * w);
  const double nz = 1.0 - std::norm(z);
  auto density = [&](double s) {
    const Point u = s * target;
    const Point den = 1.0 + std::conj(z) * u;
    const Point gamma = (u + z) / den;
    const Point velocity = target * nz / (den * den);
    return std::abs(velocity) / (1.0 - std::norm(gamma));
  };
  // The density peaks at s = 1 on the scale 1 - |target|; grade towards it.
  auto reversed = [&](double v) { return density(1.0 - v); };
  const double scale = std::min(1.0, 1.0 - std::abs(target));
  return integrate(reversed, 0.0, scale) + graded(reversed, scale, 1.0);
}

double half_plane_geodesic_length(Point z, Point w) {
  if (z == w) return 0.0;
  const double dx = w.real() - z.real();
  if (std::abs(dx) <= 1e-14 * std::max({1.0, std::abs(z), std::abs(w)})) {
    // vertical segment, density 1/(2y)
    const double lo = std::min(z.imag(), w.imag());
    const double hi = std::max(z.imag(), w.imag());
    return graded([](double y) { return 0.5 / y; }, lo, hi);
  }
  // Semicircle centred at c on the real axis through both points, where
  // |gamma'| / (2 Im gamma) = R / (2 R sin t) on the arc angle t in (0, pi).
  const double c = (std::norm(w) - std::norm(z)) / (2.0 * dx);
  auto density = [](double t) { return 0.5 / std::sin(t); };
  // Angles measured from both ends of the diameter, each accurate near its
  // own end; the far half is integrated in u = pi - t.
  const Point near_end = z.real() < w.real() ? w : z;
  const Point far_end = z.real() < w.real() ? z : w;
  const double t_lo = std::atan2(near_end.imag(), near_end.real() - c);
  const double t_hi = std::atan2(far_end.imag(), far_end.real() - c);
  const double u_lo = std::atan2(far_end.imag(), c - far_end.real());
  const double u_hi = std::atan2(near_end.imag(), c - near_end.real());
  const double mid = 0.5 * kPi;
  double total = 0.0;
  if (t_lo < mid) total += graded(density, t_lo, std::min(t_hi, mid));
  if (u_lo < mid) total += graded(density, u_lo, std::min(u_hi, mid));
  return total;
}

double annulus_geodesic_length(double inner_radius, Point z, Point w, int deck_window) {
  const double h = -std::log(inner_radius);
  auto strip = [](Point p) { return Point(std::atan2(p.imag(), p.real()), -std::log(std::abs(p))); };
  const Point a = strip(z);
  const Point b = strip(w);
  const Point lz = std::exp(kPi * a / h);
  double best = std::numeric_limits<double>::infinity();
  for (int k = -deck_window; k <= deck_window; ++k) {
    const Point lw = std::exp(kPi * (b + Point(2.0 * kPi * k, 0.0)) / h);
    const double len = half_plane_geodesic_length(lz, lw);
    if (std::isfinite(len)) best = std::min(best, len);
  }
  return best;
}

double punctured_disk_geodesic_length(Point z, Point w, int deck_window) {
  auto lift = [](Point p) {
    return Point(std::atan2(p.imag(), p.real()) / (2.0 * kPi), -std::log(std::abs(p)) / (2.0 * kPi));
  };
  const Point lz = lift(z);
  const Point lw = lift(w);
  double best = std::numeric_limits<double>::infinity();
  for (int k = -deck_window; k <= deck_window; ++k) {
    const double len = half_plane_geodesic_length(lz, lw + static_cast<double>(k));
    if (std::isfinite(len)) best = std::min(best, len);
  }
  return best;
}

}  // namespace hypdyn::oracle
