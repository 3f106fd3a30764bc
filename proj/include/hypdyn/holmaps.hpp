#pragma once

// Closed-form holomorphic maps, their algebra, and the attracting /
// automorphism / compactly divergent classification of self-maps.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hypdyn/hypgeo.hpp"

namespace hypdyn {

/// Evaluation hit a pole or produced a non-finite value.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, Point location);
  Point location() const { return location_; }

 private:
  Point location_;
};

/// z -> (a z + b)/(c z + d), stored with ad - bc = 1.
struct Mobius {
  Point a{1.0}, b{0.0}, c{0.0}, d{1.0};

  /// Normalizes to unit determinant; throws UsageError when ad - bc = 0.
  static Mobius make(Point a, Point b, Point c, Point d);
  static Mobius identity() { return {}; }

  Point determinant() const { return a * d - b * c; }
  bool is_identity() const;
  /// Matrix product (this o other), renormalized.
  Mobius after(const Mobius& other) const;
  Mobius inverse() const { return {d, -b, -c, a}; }
  /// Same transformation (matrices equal up to sign).
  friend bool operator==(const Mobius& lhs, const Mobius& rhs);
};

/// prefactor * prod (z - a_k)/(1 - conj(a_k) z), |a_k| < 1, |prefactor| <= 1.
struct Blaschke {
  Point prefactor{1.0};
  std::vector<Point> zeros;
  friend bool operator==(const Blaschke&, const Blaschke&) = default;
};

/// w -> c + exp(2 pi i w), a self-map of the half-plane when Im c >= 1.
struct ExpAffine {
  Point c;
  friend bool operator==(const ExpAffine&, const ExpAffine&) = default;
};

/// Automorphisms of A(r,1): z -> e^{i theta} z (sign +1) and
/// z -> e^{i theta} r / z (sign -1).
struct AnnulusAut {
  double theta = 0.0;
  int sign = 1;
  double inner_radius = 0.5;
  friend bool operator==(const AnnulusAut&, const AnnulusAut&) = default;
};

class HolMap;

/// outer o inner o outer^{-1}.
struct Conjugate {
  std::shared_ptr<const HolMap> outer;
  std::shared_ptr<const HolMap> outer_inverse;
  std::shared_ptr<const HolMap> inner;
  friend bool operator==(const Conjugate& lhs, const Conjugate& rhs);
};

/// maps[0] o maps[1] o ... o maps[n-1]; the last entry is applied first.
struct Composite {
  std::vector<HolMap> maps;
  friend bool operator==(const Composite& lhs, const Composite& rhs);
};

class HolMap {
 public:
  using Node = std::variant<Mobius, Blaschke, ExpAffine, AnnulusAut, Conjugate, Composite>;

  HolMap() : node_(Mobius::identity()) {}
  HolMap(Mobius m) : node_(m) {}  // NOLINT(google-explicit-constructor)

  static HolMap identity() { return HolMap(); }
  static HolMap mobius(Point a, Point b, Point c, Point d) { return HolMap(Mobius::make(a, b, c, d)); }
  /// Throws UsageError unless all zeros lie in the disk and |prefactor| <= 1.
  static HolMap blaschke(Point prefactor, std::vector<Point> zeros);
  static HolMap exp_affine(Point c) { return HolMap(Node(ExpAffine{c})); }
  /// Throws UsageError for sign other than +-1 or r outside (0,1).
  static HolMap annulus_aut(double theta, int sign, double inner_radius);
  /// Throws UsageError when outer is not invertible.
  static HolMap conjugate(const HolMap& outer, const HolMap& inner);
  /// Flattens nested composites; a single map is returned unchanged.
  static HolMap composite(std::vector<HolMap> maps);

  const Node& node() const { return node_; }
  template <class T>
  const T* get() const {
    return std::get_if<T>(&node_);
  }
  bool is_identity() const;
  /// "mobius", "blaschke", "exp_affine", "annulus_aut", "conjugate", "composite".
  std::string variant_name() const;

  friend bool operator==(const HolMap& lhs, const HolMap& rhs) { return lhs.node_ == rhs.node_; }

 private:
  explicit HolMap(Node node) : node_(std::move(node)) {}
  Node node_;
};

/// A point of the extended plane.
struct ExtendedPoint {
  Point value;
  bool infinite = false;
  static ExtendedPoint infinity() { return {Point(), true}; }
};

Point eval(const HolMap& map, Point z);
/// Mobius evaluation on the Riemann sphere; poles give the tagged infinity.
ExtendedPoint eval_extended(const Mobius& map, ExtendedPoint z);
/// Pointwise evaluation of a probe set.
std::vector<Point> eval(const HolMap& map, std::span<const Point> points);

/// f o g, reduced for Mobius o Mobius and AnnulusAut o AnnulusAut.
HolMap compose(const HolMap& f, const HolMap& g);
/// Inverse of an invertible map (Mobius, AnnulusAut and conjugates or
/// composites built from them). Throws UsageError otherwise.
HolMap inverse(const HolMap& map);
bool is_invertible(const HolMap& map);
/// map^n for any integer n (negative powers need an invertible map), by
/// repeated squaring so that Mobius powers stay reduced matrices.
HolMap power(const HolMap& map, long long n);

/// Roots of c z^2 + (d - a) z - b = 0 with multiplicity: always two entries,
/// infinity included. Throws UsageError for the identity.
std::vector<ExtendedPoint> fixed_points(const Mobius& map);

Point derivative(const HolMap& map, Point z);

struct AttractingInterior {
  Point point;
  double multiplier_modulus;
};
struct PeriodicAut {
  int period;
};
struct PseudoperiodicAut {
  double rotation_angle;
};
struct CompactlyDivergentMap {};
struct UnknownClass {
  std::string reason;
};
using MapClass = std::variant<AttractingInterior, PeriodicAut, PseudoperiodicAut, CompactlyDivergentMap, UnknownClass>;

std::string class_name(const MapClass& cls);

/// Classification of a self-map of `surface`. Mobius maps and annulus
/// automorphisms are decided from fixed points and multipliers; other maps
/// by a 200-step iterate probe, falling back to UnknownClass.
MapClass classify(const HolMap& map, const SurfaceModel& surface);

/// True iff every one of `samples` surface points maps into the surface
/// (membership with slack). Evaluation errors count as failures.
bool is_self_map(const HolMap& map, const SurfaceModel& surface, std::size_t samples);

/// max over the points of dist(surface, f(w), F(w)).
double sup_deviation(const HolMap& f, const HolMap& F, const SurfaceModel& surface,
                     std::span<const Point> region);

struct BallSampling {
  std::size_t radial = 8;
  std::size_t angular = 64;
};

/// sup_deviation over sample_closed_ball(region, radial, angular).
double sup_deviation(const HolMap& f, const HolMap& F, const HyperbolicBall& region,
                     BallSampling sampling = {});

}  // namespace hypdyn
