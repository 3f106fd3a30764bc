#include "hypdyn/hypgeo.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace hypdyn {
namespace {

// Both forms below are exact rewrites of artanh(chord / far_chord); the
// logarithmic one avoids the cancellation in 1 - ratio when the ratio is
// close to 1. `gap_product` is far_chord^2 - chord^2, supplied in factored
// form by the caller.
double distance_from_chords(double chord, double far_chord, double gap_product) {
  if (chord == 0.0) return 0.0;
  const double ratio = chord / far_chord;
  if (ratio < 0.5) return std::atanh(ratio);
  return std::log((far_chord + chord) / std::sqrt(gap_product));
}

// exp(z) - 1 without cancellation for small |z|.
Point expm1_complex(Point z) {
  const double s = std::sin(0.5 * z.imag());
  const double re = std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * s * s;
  const double im = std::exp(z.real()) * std::sin(z.imag());
  return {re, im};
}

// Half-plane distance between exp(a) and exp(b) for a, b with imaginary parts
// in (0, pi); evaluated relative to |exp(a)| so that neither exponential is
// formed explicitly.
double exp_chart_distance(Point a, Point b) {
  const Point diff = b - a;
  const Point diff_conj = std::conj(b) - a;
  const double chord = std::abs(expm1_complex(diff));
  const double far_chord = std::abs(expm1_complex(diff_conj));
  // Im exp(a) / |exp(a)| and Im exp(b) / |exp(a)|.
  const double y1 = std::sin(a.imag());
  const double y2 = std::exp(diff.real()) * std::sin(b.imag());
  return distance_from_chords(chord, far_chord, 4.0 * y1 * y2);
}

struct Lift {
  Point coordinate;  // w for the punctured disk, zeta for the annulus
  double period;
};

Lift principal_lift(const SurfaceModel& surface, Point z) {
  if (surface.kind() == SurfaceKind::PuncturedDisk) {
    // exp(2 pi i w) = z
    return {Point(std::arg(z) / (2.0 * kPi), -std::log(std::abs(z)) / (2.0 * kPi)), 1.0};
  }
  // exp(i zeta) = z
  return {Point(std::arg(z), -std::log(std::abs(z))), 2.0 * kPi};
}

}  // namespace

Point cayley(Point w) { return (w - Point(0.0, 1.0)) / (w + Point(0.0, 1.0)); }

Point inverse_cayley(Point u) { return Point(0.0, 1.0) * (1.0 + u) / (1.0 - u); }

double disk_distance(Point z, Point w) {
  const double chord = std::abs(z - w);
  const double far_chord = std::abs(1.0 - std::conj(w) * z);
  const double mz = std::abs(z);
  const double mw = std::abs(w);
  const double gap = (1.0 - mz) * (1.0 + mz) * (1.0 - mw) * (1.0 + mw);
  return distance_from_chords(chord, far_chord, gap);
}

double half_plane_distance(Point z, Point w) {
  const double chord = std::abs(z - w);
  const double far_chord = std::abs(z - std::conj(w));
  return distance_from_chords(chord, far_chord, 4.0 * z.imag() * w.imag());
}

double deck_minimized_distance(const SurfaceModel& surface, Point z, Point w, int extra_window) {
  if (!surface.is_quotient()) throw UsageError("deck minimization needs a quotient surface");
  surface.require(z, "first point");
  surface.require(w, "second point");
  const Lift lz = principal_lift(surface, z);
  const Lift lw = principal_lift(surface, w);
  const int window =
      static_cast<int>(std::ceil(std::abs(lz.coordinate.real() - lw.coordinate.real()) / lz.period)) + 2 +
      extra_window;
  assert(window >= 0);

  double best = kInfinity;
  if (surface.kind() == SurfaceKind::PuncturedDisk) {
    for (int k = -window; k <= window; ++k) {
      best = std::min(best, half_plane_distance(lz.coordinate, lw.coordinate + static_cast<double>(k)));
    }
    return best;
  }
  const double scale = kPi / surface.strip_height();
  const Point a = scale * lz.coordinate;
  for (int k = -window; k <= window; ++k) {
    const Point b = scale * (lw.coordinate + Point(2.0 * kPi * k, 0.0));
    best = std::min(best, exp_chart_distance(a, b));
  }
  return best;
}

double dist(const SurfaceModel& surface, Point z, Point w) {
  switch (surface.kind()) {
    case SurfaceKind::Disk:
      surface.require(z, "first point");
      surface.require(w, "second point");
      return disk_distance(z, w);
    case SurfaceKind::HalfPlane:
      surface.require(z, "first point");
      surface.require(w, "second point");
      return half_plane_distance(z, w);
    case SurfaceKind::PuncturedDisk:
    case SurfaceKind::Annulus:
      return deck_minimized_distance(surface, z, w, 0);
  }
  return kInfinity;
}

Point lift_to_half_plane(const SurfaceModel& surface, Point z) {
  if (!surface.is_quotient()) throw UsageError("lift_to_half_plane needs the punctured disk or an annulus");
  surface.require(z);
  const Lift lift = principal_lift(surface, z);
  if (surface.kind() == SurfaceKind::PuncturedDisk) return lift.coordinate;
  return std::exp(kPi * lift.coordinate / surface.strip_height());
}

Point lift_deck_translate(const SurfaceModel& surface, Point z, int k) {
  if (!surface.is_quotient()) throw UsageError("deck translates need the punctured disk or an annulus");
  surface.require(z);
  const Lift lift = principal_lift(surface, z);
  if (surface.kind() == SurfaceKind::PuncturedDisk) return lift.coordinate + static_cast<double>(k);
  return std::exp(kPi * (lift.coordinate + Point(2.0 * kPi * k, 0.0)) / surface.strip_height());
}

Point project_from_half_plane(const SurfaceModel& surface, Point w) {
  if (!surface.is_quotient()) throw UsageError("project_from_half_plane needs the punctured disk or an annulus");
  if (surface.kind() == SurfaceKind::PuncturedDisk) {
    // exp(2 pi i w), reducing Re w modulo 1 first (exact) to keep the phase accurate.
    const double x = std::remainder(w.real(), 1.0);
    return std::exp(-2.0 * kPi * w.imag()) * Point(std::cos(2.0 * kPi * x), std::sin(2.0 * kPi * x));
  }
  const Point zeta = surface.strip_height() / kPi * std::log(w);
  return std::exp(Point(0.0, 1.0) * zeta);
}

}  // namespace hypdyn
