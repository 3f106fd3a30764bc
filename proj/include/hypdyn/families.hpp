#pragma once

// Named maps used throughout the scenarios and configs.

#include "hypdyn/holmaps.hpp"

namespace hypdyn::families {

/// z -> z/2 + delta e^{i theta}; a self-map of the disk for delta < 1/2.
HolMap half_scaled(double delta, double theta);
/// z -> z/2 + shift.
HolMap half_scaled_shift(Point shift);
/// w -> w + t.
HolMap translation(double t);
/// z -> e^{i angle} z.
HolMap rotation(double angle);
/// (n w - 1)/(w + n): elliptic automorphism of the half-plane fixing i, with
/// n = 0 giving -1/w.
HolMap elliptic_tilt(int n);
/// phi_n o (w -> w - 1) o phi_n^{-1} in the closed form
/// ((n^2+n+1) w - n^2)/(w + n^2 - n + 1), parabolic with fixed point n.
HolMap parabolic_conjugate(int n);
/// w -> i + exp(2 pi i w).
HolMap exp_into_horodisk();

}  // namespace hypdyn::families
