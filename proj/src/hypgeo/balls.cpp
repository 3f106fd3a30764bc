#include "hypdyn/hypgeo.hpp"

#include <cmath>
#include <sstream>

namespace hypdyn {
namespace {

constexpr double kGoldenAngle = 2.399963229728653;  // pi (3 - sqrt 5)

// Point at hyperbolic distance `radius` from x + iy in the half-plane, in
// direction `angle`. It is the image of tanh(radius) e^{i angle} under the
// disk-to-half-plane isometry sending 0 to x + iy, written out so that
// neither 1 - tanh(radius) nor the imaginary part suffers cancellation.
Point half_plane_circle_point(Point center, double radius, double angle) {
  const double t = std::tanh(radius);
  const double one_minus_t = 2.0 / (std::exp(2.0 * radius) + 1.0);
  const double sech = 1.0 / std::cosh(radius);
  const double s = std::sin(0.5 * angle);
  const double den = one_minus_t * one_minus_t + 4.0 * t * s * s;
  const double re = -2.0 * t * std::sin(angle) / den;
  const double im = sech * sech / den;
  return {center.real() + center.imag() * re, center.imag() * im};
}

Point disk_circle_point(Point center, double radius, double angle) {
  const Point u = std::tanh(radius) * Point(std::cos(angle), std::sin(angle));
  return (u + center) / (1.0 + std::conj(center) * u);
}

// Circle point on any surface; quotient surfaces go through the covering.
Point circle_point(const SurfaceModel& surface, Point center, Point lifted_center, double radius,
                   double angle) {
  switch (surface.kind()) {
    case SurfaceKind::Disk:
      return disk_circle_point(center, radius, angle);
    case SurfaceKind::HalfPlane:
      return half_plane_circle_point(center, radius, angle);
    case SurfaceKind::PuncturedDisk:
    case SurfaceKind::Annulus:
      return project_from_half_plane(surface, half_plane_circle_point(lifted_center, radius, angle));
  }
  return center;
}

Point lifted(const SurfaceModel& surface, Point z) {
  return surface.is_quotient() ? lift_to_half_plane(surface, z) : z;
}

}  // namespace

HyperbolicBall::HyperbolicBall(SurfaceModel surface_, Point center_, double radius_)
    : surface(surface_), center(center_), radius(radius_) {
  surface.require(center, "ball center");
  if (!(radius >= 0.0)) {
    std::ostringstream msg;
    msg << "ball radius must be nonnegative, got " << radius;
    throw UsageError(msg.str());
  }
}

bool ball_contains(const HyperbolicBall& ball, Point z) {
  return dist(ball.surface, ball.center, z) < ball.radius;
}

std::vector<Point> ball_boundary(const HyperbolicBall& ball, std::size_t count) {
  std::vector<Point> out;
  out.reserve(count);
  const Point lc = lifted(ball.surface, ball.center);
  for (std::size_t j = 0; j < count; ++j) {
    const double angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(count);
    out.push_back(circle_point(ball.surface, ball.center, lc, ball.radius, angle));
  }
  return out;
}

std::vector<Point> sample_closed_ball(const HyperbolicBall& ball, std::size_t radial, std::size_t angular) {
  std::vector<Point> out;
  out.reserve(1 + radial * angular);
  out.push_back(ball.center);
  if (ball.radius == 0.0) return out;
  const Point lc = lifted(ball.surface, ball.center);
  for (std::size_t k = 1; k <= radial; ++k) {
    const double r = ball.radius * static_cast<double>(k) / static_cast<double>(radial);
    for (std::size_t j = 0; j < angular; ++j) {
      const double angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(angular);
      out.push_back(circle_point(ball.surface, ball.center, lc, r, angle));
    }
  }
  return out;
}

std::vector<Point> surface_samples(const SurfaceModel& surface, std::size_t count, double max_radius) {
  std::vector<Point> out;
  out.reserve(count);
  const Point base = surface.base_point();
  const Point lc = lifted(surface, base);
  for (std::size_t i = 0; i < count; ++i) {
    const double radius = max_radius * std::sqrt((static_cast<double>(i) + 0.5) / static_cast<double>(count));
    const double angle = kGoldenAngle * static_cast<double>(i);
    out.push_back(circle_point(surface, base, lc, radius, angle));
  }
  return out;
}

bool SubdomainSpec::contains(const SurfaceModel& surface, Point z) const {
  if (!surface.contains_with_slack(z)) return false;
  return std::visit(
      [&](const auto& shape) -> bool {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, HyperbolicBall>) {
          if (!surface.contains(z)) return false;
          return dist(surface, shape.center, z) < shape.radius;
        } else if constexpr (std::is_same_v<T, EuclideanDisk>) {
          return std::abs(z - shape.center) < shape.radius;
        } else if constexpr (std::is_same_v<T, PredicateDomain>) {
          return shape.contains(z);
        } else {
          return true;
        }
      },
      shape_);
}

}  // namespace hypdyn
