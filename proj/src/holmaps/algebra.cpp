#include <cmath>

#include "hypdyn/holmaps.hpp"

namespace hypdyn {
namespace {

// Reduces f o g when both are of a closed-under-composition variant.
std::optional<HolMap> reduce_pair(const HolMap& f, const HolMap& g) {
  const auto* mf = f.get<Mobius>();
  const auto* mg = g.get<Mobius>();
  if (mf && mg) return HolMap(mf->after(*mg));

  const auto* af = f.get<AnnulusAut>();
  const auto* ag = g.get<AnnulusAut>();
  if (af && ag && af->inner_radius == ag->inner_radius) {
    // theta,s1 o eta,s2 -> (theta + s1 eta, s1 s2)
    const double theta = af->theta + static_cast<double>(af->sign) * ag->theta;
    return HolMap::annulus_aut(theta, af->sign * ag->sign, af->inner_radius);
  }
  return std::nullopt;
}

std::vector<HolMap> parts(const HolMap& m) {
  if (const auto* c = m.get<Composite>()) return c->maps;
  return {m};
}

}  // namespace

HolMap compose(const HolMap& f, const HolMap& g) {
  if (g.is_identity() && g.get<Mobius>()) return f;
  if (f.is_identity() && f.get<Mobius>()) return g;
  if (auto reduced = reduce_pair(f, g)) return *reduced;

  std::vector<HolMap> outer = parts(f);
  std::vector<HolMap> inner = parts(g);
  // Merge across the seam while neighbours reduce.
  while (!outer.empty() && !inner.empty()) {
    auto reduced = reduce_pair(outer.back(), inner.front());
    if (!reduced) break;
    outer.pop_back();
    inner.erase(inner.begin());
    if (!(reduced->is_identity() && reduced->get<Mobius>())) inner.insert(inner.begin(), *reduced);
  }
  outer.insert(outer.end(), inner.begin(), inner.end());
  return HolMap::composite(std::move(outer));
}

bool is_invertible(const HolMap& map) {
  return std::visit(
      [](const auto& m) -> bool {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Mobius> || std::is_same_v<T, AnnulusAut>) {
          return true;
        } else if constexpr (std::is_same_v<T, Conjugate>) {
          return is_invertible(*m.inner);
        } else if constexpr (std::is_same_v<T, Composite>) {
          for (const auto& part : m.maps) {
            if (!is_invertible(part)) return false;
          }
          return true;
        } else {
          return false;
        }
      },
      map.node());
}

HolMap inverse(const HolMap& map) {
  return std::visit(
      [&](const auto& m) -> HolMap {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Mobius>) {
          return HolMap(m.inverse());
        } else if constexpr (std::is_same_v<T, AnnulusAut>) {
          // theta,1 -> -theta,1; theta,-1 is an involution.
          return HolMap::annulus_aut(m.sign == 1 ? -m.theta : m.theta, m.sign, m.inner_radius);
        } else if constexpr (std::is_same_v<T, Conjugate>) {
          return HolMap::conjugate(*m.outer, inverse(*m.inner));
        } else if constexpr (std::is_same_v<T, Composite>) {
          HolMap out = HolMap::identity();
          for (const auto& part : m.maps) out = compose(out, inverse(part));
          return out;
        } else {
          throw UsageError("no closed-form inverse for a " + map.variant_name() + " map");
        }
      },
      map.node());
}

HolMap power(const HolMap& map, long long n) {
  HolMap base = n < 0 ? inverse(map) : map;
  unsigned long long k = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1ULL : static_cast<unsigned long long>(n);
  HolMap result = HolMap::identity();
  while (k > 0) {
    if (k & 1ULL) result = compose(result, base);
    k >>= 1ULL;
    if (k > 0) base = compose(base, base);
  }
  return result;
}

std::vector<ExtendedPoint> fixed_points(const Mobius& m) {
  if (m.is_identity()) throw UsageError("the identity fixes every point");
  const double scale = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
  const double tiny = 1e-15 * scale;
  const Point A = m.c;
  const Point B = m.d - m.a;
  const Point C = -m.b;
  if (std::abs(A) <= tiny) {
    if (std::abs(B) <= tiny) return {ExtendedPoint::infinity(), ExtendedPoint::infinity()};
    return {ExtendedPoint{-C / B, false}, ExtendedPoint::infinity()};
  }
  Point disc = B * B - 4.0 * A * C;
  // Parabolic maps: the discriminant is zero up to rounding, and its square
  // root would amplify that rounding to ~1e-8 in the root.
  if (std::abs(disc) <= 1e-12 * scale * scale) {
    const Point root = -B / (2.0 * A);
    return {ExtendedPoint{root, false}, ExtendedPoint{root, false}};
  }
  Point sq = std::sqrt(disc);
  if (std::real(std::conj(B) * sq) < 0.0) sq = -sq;
  const Point q = -0.5 * (B + sq);
  const Point r1 = q / A;
  const Point r2 = (q == Point(0.0)) ? r1 : C / q;
  return {ExtendedPoint{r1, false}, ExtendedPoint{r2, false}};
}

}  // namespace hypdyn
