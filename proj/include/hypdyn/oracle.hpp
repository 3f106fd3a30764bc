#pragma once

// Reference distances obtained by integrating the metric density along an
// explicitly parametrized geodesic. Nothing here calls the closed-form
// distance code; it exists to check it.

#include <complex>

namespace hypdyn::oracle {

using Point = std::complex<double>;

/// Length of the disk geodesic from z to w under the density 1/(1-|z|^2),
/// integrated along s -> T_z(s T_z^{-1}(w)), T_z(u) = (u + z)/(1 + conj(z) u).
double disk_geodesic_length(Point z, Point w);

/// Length of the half-plane geodesic (vertical segment or semicircle) under
/// the density 1/(2 Im w), integrated in the arc angle.
double half_plane_geodesic_length(Point z, Point w);

/// Minimum of half-plane geodesic lengths between lifts of z and of the deck
/// translates of w, |k| <= deck_window, through the strip chart
/// z = exp(i zeta), zeta -> exp(pi zeta / log(1/r)).
double annulus_geodesic_length(double inner_radius, Point z, Point w, int deck_window = 6);

/// Same for the punctured disk with the covering exp(2 pi i w).
double punctured_disk_geodesic_length(Point z, Point w, int deck_window = 6);

}  // namespace hypdyn::oracle
