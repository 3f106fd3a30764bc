#pragma once

// Poincare geometry on the four concrete hyperbolic surfaces: the unit disk,
// the upper half-plane, the punctured disk and the annuli A(r,1).
//
// Metric convention: the disk carries the density 1/(1-|z|^2), so that
// dist(0, t) = artanh(t). The half-plane carries the Cayley pushforward
// 1/(2 Im w). Punctured disk and annulus distances are quotient distances,
// the minimum over deck translates of a half-plane distance between lifts.

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hypdyn {

using Point = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Slack applied when deciding whether a computed point still lies on a
/// surface (rounding on the boundary of closed balls, images of self-maps).
inline constexpr double kMembershipSlack = 1e-12;

/// A point that is off its surface, or outside a required subdomain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A call that violates a documented precondition unrelated to geometry.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SurfaceKind { Disk, HalfPlane, PuncturedDisk, Annulus };

class SurfaceModel {
 public:
  static SurfaceModel disk() { return SurfaceModel(SurfaceKind::Disk, 0.0); }
  static SurfaceModel half_plane() { return SurfaceModel(SurfaceKind::HalfPlane, 0.0); }
  static SurfaceModel punctured_disk() { return SurfaceModel(SurfaceKind::PuncturedDisk, 0.0); }
  /// A(r,1) = { r < |z| < 1 }; throws UsageError unless 0 < r < 1.
  static SurfaceModel annulus(double inner_radius);

  SurfaceKind kind() const { return kind_; }
  /// The r of A(r,1); zero for the other kinds.
  double inner_radius() const { return inner_radius_; }
  /// Width h = log(1/r) of the covering strip (annulus only).
  double strip_height() const;

  /// Strict membership.
  bool contains(Point z) const;
  /// Membership with kMembershipSlack outward tolerance.
  bool contains_with_slack(Point z) const;
  /// Throws DomainError naming `what` when z is not strictly on the surface.
  void require(Point z, const char* what = "point") const;

  /// Reference point: 0, i, 1/2 and sqrt(r) respectively.
  Point base_point() const;
  /// "disk", "half-plane", "punctured-disk", "annulus".
  std::string name() const;
  /// Inverse of name(); the annulus needs its radius separately.
  static SurfaceModel from_name(const std::string& name, double inner_radius = 0.0);

  /// True for surfaces that are a quotient of the half-plane by translations.
  bool is_quotient() const {
    return kind_ == SurfaceKind::PuncturedDisk || kind_ == SurfaceKind::Annulus;
  }

  friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;

 private:
  SurfaceModel(SurfaceKind kind, double inner_radius) : kind_(kind), inner_radius_(inner_radius) {}

  SurfaceKind kind_;
  double inner_radius_;
};

// ---------------------------------------------------------------------------
// Distances

/// Poincare distance in the unit disk.
double disk_distance(Point z, Point w);
/// Poincare distance in the upper half-plane.
double half_plane_distance(Point z, Point w);
/// Cayley transform H -> D, w -> (w - i)/(w + i), and its inverse.
Point cayley(Point w);
Point inverse_cayley(Point u);

/// Distance between z and w on `surface`. Throws DomainError for off-surface
/// points.
double dist(const SurfaceModel& surface, Point z, Point w);

/// Quotient distance computed over the deck window
/// |k| <= ceil(|Re(lift z) - Re(lift w)| / period) + 2 + extra_window.
/// dist() is this function with extra_window = 0. Only meaningful for the
/// punctured disk and the annulus.
double deck_minimized_distance(const SurfaceModel& surface, Point z, Point w, int extra_window);

// ---------------------------------------------------------------------------
// Covering maps

/// Principal lift to the upper half-plane. Punctured disk: pi(w) = exp(2 pi i w)
/// with Re w in (-1/2, 1/2]. Annulus: z = exp(i zeta) on the strip
/// 0 < Im zeta < h, followed by zeta -> exp(pi zeta / h).
Point lift_to_half_plane(const SurfaceModel& surface, Point z);
/// The covering projection pi; right inverse of lift_to_half_plane.
Point project_from_half_plane(const SurfaceModel& surface, Point w);
/// Lift of the deck translate with index k (w + k for the punctured disk,
/// zeta + 2 pi k for the annulus).
Point lift_deck_translate(const SurfaceModel& surface, Point z, int k);

// ---------------------------------------------------------------------------
// Balls and subdomains

struct HyperbolicBall {
  SurfaceModel surface;
  Point center;
  double radius;

  /// Throws DomainError when the center is off the surface and UsageError
  /// for a negative radius.
  HyperbolicBall(SurfaceModel surface, Point center, double radius);
};

/// dist(center, z) < radius. Throws DomainError when z is off the surface.
bool ball_contains(const HyperbolicBall& ball, Point z);

/// `count` equally spaced points (in the hyperbolic angle at the center) on
/// the boundary circle of the ball. For quotient surfaces this is the
/// projection of the circle in the covering half-plane.
std::vector<Point> ball_boundary(const HyperbolicBall& ball, std::size_t count);

/// Closed-ball sampling: the center plus `radial` concentric circles with
/// `angular` points each. Doubling both parameters yields a superset.
std::vector<Point> sample_closed_ball(const HyperbolicBall& ball, std::size_t radial,
                                      std::size_t angular);

/// Deterministic sample of `count` surface points spread out to hyperbolic
/// radius `max_radius` around the base point, approaching every boundary
/// component.
std::vector<Point> surface_samples(const SurfaceModel& surface, std::size_t count,
                                   double max_radius = 8.0);

struct EuclideanDisk {
  Point center;
  double radius;
};

/// Membership callback with a sample grid covering the subdomain.
struct PredicateDomain {
  std::function<bool(Point)> contains;
  std::vector<Point> grid;
};

struct WholeSurface {};

/// A subdomain Omega of a surface X.
class SubdomainSpec {
 public:
  using Shape = std::variant<HyperbolicBall, EuclideanDisk, PredicateDomain, WholeSurface>;

  static SubdomainSpec ball(HyperbolicBall ball) { return SubdomainSpec(std::move(ball)); }
  static SubdomainSpec euclidean_disk(Point center, double radius) {
    return SubdomainSpec(EuclideanDisk{center, radius});
  }
  static SubdomainSpec predicate(std::function<bool(Point)> contains, std::vector<Point> grid) {
    return SubdomainSpec(PredicateDomain{std::move(contains), std::move(grid)});
  }
  static SubdomainSpec whole() { return SubdomainSpec(WholeSurface{}); }

  /// z in Omega; always implies z on the surface (with slack).
  bool contains(const SurfaceModel& surface, Point z) const;
  const Shape& shape() const { return shape_; }

 private:
  explicit SubdomainSpec(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

struct InradiusOptions {
  double cap = 10.0;
  int bisection_steps = 60;
  std::size_t coarse_samples = 256;
  std::size_t fine_samples = 4096;
  double refine_below = 1e-3;
};

/// R(z; Omega, X): the supremum of r with B_X(z, r) inside Omega, by
/// bisection on sampled ball boundaries. Returns +infinity when the ball of
/// radius options.cap is still inside Omega. Throws DomainError if z is not
/// in Omega.
double inradius(const SurfaceModel& surface, const SubdomainSpec& domain, Point z,
                const InradiusOptions& options = {});

/// max over grid of inradius: a lower bound for R(Omega, X). Throws
/// UsageError for an empty grid and DomainError for grid points outside
/// Omega.
double bloch_radius(const SurfaceModel& surface, const SubdomainSpec& domain,
                    std::span<const Point> grid, const InradiusOptions& options = {});

}  // namespace hypdyn
