#include "hypdyn/families.hpp"

#include <cmath>

namespace hypdyn::families {

HolMap half_scaled(double delta, double theta) {
  return half_scaled_shift(delta * Point(std::cos(theta), std::sin(theta)));
}

HolMap half_scaled_shift(Point shift) { return HolMap::mobius(0.5, shift, 0.0, 1.0); }

HolMap translation(double t) { return HolMap::mobius(1.0, t, 0.0, 1.0); }

HolMap rotation(double angle) {
  // e^{i angle / 2} z / e^{-i angle / 2} keeps the determinant exactly 1.
  const Point half(std::cos(0.5 * angle), std::sin(0.5 * angle));
  return HolMap::mobius(half, 0.0, 0.0, std::conj(half));
}

HolMap elliptic_tilt(int n) {
  const double v = n;
  return HolMap::mobius(v, -1.0, 1.0, v);
}

HolMap parabolic_conjugate(int n) {
  const double v = n;
  return HolMap::mobius(v * v + v + 1.0, -v * v, 1.0, v * v - v + 1.0);
}

HolMap exp_into_horodisk() { return HolMap::exp_affine(Point(0.0, 1.0)); }

}  // namespace hypdyn::families
