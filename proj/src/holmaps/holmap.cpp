#include <cmath>
#include <sstream>

#include "hypdyn/holmaps.hpp"

namespace hypdyn {
namespace {

std::string describe(const std::string& what, Point z) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " at (" << z.real() << ", " << z.imag() << ")";
  return msg.str();
}

Point checked(Point value, Point z, const char* what) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) throw NumericError(what, z);
  return value;
}

Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// exp(2 pi i w) with Re w reduced modulo 1 first; the reduction is exact.
Point exp_two_pi_i(Point w) {
  const double x = std::remainder(w.real(), 1.0);
  return std::exp(-2.0 * kPi * w.imag()) * unit(2.0 * kPi * x);
}

}  // namespace

NumericError::NumericError(const std::string& what, Point location)
    : std::runtime_error(describe(what, location)), location_(location) {}

Mobius Mobius::make(Point a, Point b, Point c, Point d) {
  const Point det = a * d - b * c;
  if (det == Point(0.0)) throw UsageError("Mobius map with ad - bc = 0");
  // Already-normalized input is kept bit-for-bit.
  if (std::abs(det - Point(1.0)) <= 4.0 * std::numeric_limits<double>::epsilon()) return {a, b, c, d};
  const Point s = std::sqrt(det);
  return {a / s, b / s, c / s, d / s};
}

bool Mobius::is_identity() const {
  return b == Point(0.0) && c == Point(0.0) && a == d;
}

Mobius Mobius::after(const Mobius& o) const {
  return make(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
}

bool operator==(const Mobius& lhs, const Mobius& rhs) {
  const bool same = lhs.a == rhs.a && lhs.b == rhs.b && lhs.c == rhs.c && lhs.d == rhs.d;
  const bool negated = lhs.a == -rhs.a && lhs.b == -rhs.b && lhs.c == -rhs.c && lhs.d == -rhs.d;
  return same || negated;
}

bool operator==(const Conjugate& lhs, const Conjugate& rhs) {
  return *lhs.outer == *rhs.outer && *lhs.inner == *rhs.inner;
}

bool operator==(const Composite& lhs, const Composite& rhs) { return lhs.maps == rhs.maps; }

HolMap HolMap::blaschke(Point prefactor, std::vector<Point> zeros) {
  if (std::abs(prefactor) > 1.0) throw UsageError("Blaschke prefactor must have modulus <= 1");
  for (const Point a : zeros) {
    if (!(std::abs(a) < 1.0)) throw UsageError(describe("Blaschke zero outside the disk", a));
  }
  return HolMap(Node(Blaschke{prefactor, std::move(zeros)}));
}

HolMap HolMap::annulus_aut(double theta, int sign, double inner_radius) {
  if (sign != 1 && sign != -1) throw UsageError("annulus automorphism sign must be +1 or -1");
  if (!(inner_radius > 0.0 && inner_radius < 1.0)) throw UsageError("annulus inner radius must lie in (0,1)");
  return HolMap(Node(AnnulusAut{theta, sign, inner_radius}));
}

HolMap HolMap::conjugate(const HolMap& outer, const HolMap& inner) {
  auto inv = std::make_shared<const HolMap>(inverse(outer));
  return HolMap(Node(Conjugate{std::make_shared<const HolMap>(outer), std::move(inv),
                               std::make_shared<const HolMap>(inner)}));
}

HolMap HolMap::composite(std::vector<HolMap> maps) {
  std::vector<HolMap> flat;
  for (auto& m : maps) {
    if (const auto* c = m.get<Composite>()) {
      flat.insert(flat.end(), c->maps.begin(), c->maps.end());
    } else {
      flat.push_back(std::move(m));
    }
  }
  if (flat.empty()) return identity();
  if (flat.size() == 1) return flat.front();
  return HolMap(Node(Composite{std::move(flat)}));
}

bool HolMap::is_identity() const {
  if (const auto* m = get<Mobius>()) return m->is_identity();
  if (const auto* a = get<AnnulusAut>()) return a->sign == 1 && a->theta == 0.0;
  return false;
}

std::string HolMap::variant_name() const {
  static const char* names[] = {"mobius", "blaschke", "exp_affine", "annulus_aut", "conjugate", "composite"};
  return names[node_.index()];
}

namespace {

// Chains of maps may pass through infinity between Mobius factors (a
// conjugate evaluated at the image of a pole of the inverse, say); only the
// final value has to be finite.
ExtendedPoint eval_through(const HolMap& map, ExtendedPoint z) {
  if (const auto* m = map.get<Mobius>()) return eval_extended(*m, z);
  if (const auto* c = map.get<Conjugate>()) {
    return eval_through(*c->outer, eval_through(*c->inner, eval_through(*c->outer_inverse, z)));
  }
  if (const auto* c = map.get<Composite>()) {
    for (auto it = c->maps.rbegin(); it != c->maps.rend(); ++it) z = eval_through(*it, z);
    return z;
  }
  if (z.infinite) throw NumericError("non-Mobius map evaluated at infinity", Point(kInfinity, 0.0));
  return {eval(map, z.value), false};
}

Point finite_through(const HolMap& map, Point z) {
  const ExtendedPoint w = eval_through(map, {z, false});
  if (w.infinite) throw NumericError("pole", z);
  return checked(w.value, z, "overflow");
}

}  // namespace

Point eval(const HolMap& map, Point z) {
  return std::visit(
      [&](const auto& m) -> Point {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Mobius>) {
          const Point den = m.c * z + m.d;
          if (den == Point(0.0)) throw NumericError("Mobius pole", z);
          return checked((m.a * z + m.b) / den, z, "Mobius overflow");
        } else if constexpr (std::is_same_v<T, Blaschke>) {
          Point value = m.prefactor;
          for (const Point a : m.zeros) {
            const Point den = 1.0 - std::conj(a) * z;
            if (den == Point(0.0)) throw NumericError("Blaschke pole", z);
            value *= (z - a) / den;
          }
          return checked(value, z, "Blaschke overflow");
        } else if constexpr (std::is_same_v<T, ExpAffine>) {
          return checked(m.c + exp_two_pi_i(z), z, "exponential overflow");
        } else if constexpr (std::is_same_v<T, AnnulusAut>) {
          if (m.sign == 1) return unit(m.theta) * z;
          if (z == Point(0.0)) throw NumericError("annulus inversion pole", z);
          return unit(m.theta) * m.inner_radius / z;
        } else if constexpr (std::is_same_v<T, Conjugate>) {
          return finite_through(map, z);
        } else {
          return finite_through(map, z);
        }
      },
      map.node());
}

std::vector<Point> eval(const HolMap& map, std::span<const Point> points) {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const Point z : points) out.push_back(eval(map, z));
  return out;
}

ExtendedPoint eval_extended(const Mobius& m, ExtendedPoint z) {
  if (z.infinite) {
    if (m.c == Point(0.0)) return ExtendedPoint::infinity();
    return {m.a / m.c, false};
  }
  const Point den = m.c * z.value + m.d;
  if (den == Point(0.0)) return ExtendedPoint::infinity();
  return {(m.a * z.value + m.b) / den, false};
}

Point derivative(const HolMap& map, Point z) {
  return std::visit(
      [&](const auto& m) -> Point {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Mobius>) {
          const Point den = m.c * z + m.d;
          if (den == Point(0.0)) throw NumericError("Mobius pole", z);
          return m.determinant() / (den * den);
        } else if constexpr (std::is_same_v<T, Blaschke>) {
          // product rule over the factors
          const std::size_t n = m.zeros.size();
          std::vector<Point> factor(n), slope(n);
          for (std::size_t k = 0; k < n; ++k) {
            const Point a = m.zeros[k];
            const Point den = 1.0 - std::conj(a) * z;
            if (den == Point(0.0)) throw NumericError("Blaschke pole", z);
            factor[k] = (z - a) / den;
            slope[k] = (1.0 - std::norm(a)) / (den * den);
          }
          Point total = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            Point term = slope[k];
            for (std::size_t j = 0; j < n; ++j) {
              if (j != k) term *= factor[j];
            }
            total += term;
          }
          return m.prefactor * total;
        } else if constexpr (std::is_same_v<T, ExpAffine>) {
          return Point(0.0, 2.0 * kPi) * exp_two_pi_i(z);
        } else if constexpr (std::is_same_v<T, AnnulusAut>) {
          if (m.sign == 1) return unit(m.theta);
          if (z == Point(0.0)) throw NumericError("annulus inversion pole", z);
          return -unit(m.theta) * m.inner_radius / (z * z);
        } else if constexpr (std::is_same_v<T, Conjugate>) {
          const Point u = eval(*m.outer_inverse, z);
          const Point v = eval(*m.inner, u);
          return derivative(*m.outer, v) * derivative(*m.inner, u) * derivative(*m.outer_inverse, z);
        } else {
          Point w = z;
          Point total = 1.0;
          for (auto it = m.maps.rbegin(); it != m.maps.rend(); ++it) {
            total *= derivative(*it, w);
            w = eval(*it, w);
          }
          return total;
        }
      },
      map.node());
}

}  // namespace hypdyn
