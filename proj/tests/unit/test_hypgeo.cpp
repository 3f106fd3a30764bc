#include <doctest.h>

#include <cmath>
#include <random>

#include "hypdyn/hypgeo.hpp"
#include "hypdyn/oracle.hpp"

using namespace hypdyn;

namespace {

Point random_disk_point(std::mt19937_64& rng, double max_modulus = 0.95) {
  std::uniform_real_distribution<double> radius(0.0, max_modulus);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  return std::polar(std::sqrt(radius(rng) / max_modulus) * max_modulus, angle(rng));
}

Point random_half_plane_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-3.0, 3.0);
  std::uniform_real_distribution<double> logy(-3.0, 3.0);
  return {x(rng), std::exp(logy(rng))};
}

Point random_annulus_point(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> modulus(r + 0.02 * (1.0 - r), 1.0 - 0.02 * (1.0 - r));
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  return std::polar(modulus(rng), angle(rng));
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(dist(SurfaceModel::disk(), 0.0, 0.0) == 0.0);
  CHECK(dist(SurfaceModel::disk(), 0.0, 0.5) == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
  CHECK(dist(SurfaceModel::half_plane(), {0, 1}, {0, 2}) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("distance examples agree with geodesic quadrature") {
  CHECK(std::abs(oracle::disk_geodesic_length(0.0, 0.5) - dist(SurfaceModel::disk(), 0.0, 0.5)) < 1e-10);
  CHECK(std::abs(oracle::half_plane_geodesic_length({0, 1}, {0, 2}) -
                 dist(SurfaceModel::half_plane(), {0, 1}, {0, 2})) < 1e-10);
  CHECK(std::abs(oracle::half_plane_geodesic_length({-1, 0.5}, {2, 0.1}) - half_plane_distance({-1, 0.5}, {2, 0.1})) <
        1e-9);
}

TEST_CASE("off-surface points are rejected") {
  CHECK_THROWS_AS(dist(SurfaceModel::disk(), 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(dist(SurfaceModel::half_plane(), {0, 1}, {3, -1}), DomainError);
  CHECK_THROWS_AS(dist(SurfaceModel::punctured_disk(), 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(dist(SurfaceModel::annulus(0.5), 0.3, 0.7), DomainError);
  CHECK_THROWS_AS(SurfaceModel::annulus(1.0), UsageError);
}

TEST_CASE("symmetry and triangle inequality on random points") {
  std::mt19937_64 rng(11);
  const std::vector<SurfaceModel> surfaces{SurfaceModel::disk(), SurfaceModel::half_plane(),
                                           SurfaceModel::punctured_disk(), SurfaceModel::annulus(0.1),
                                           SurfaceModel::annulus(0.5)};
  for (const auto& s : surfaces) {
    CAPTURE(s.name());
    auto sample = [&]() -> Point {
      switch (s.kind()) {
        case SurfaceKind::HalfPlane:
          return random_half_plane_point(rng);
        case SurfaceKind::PuncturedDisk:
          return random_annulus_point(rng, 1e-6);
        case SurfaceKind::Annulus:
          return random_annulus_point(rng, s.inner_radius());
        default:
          return random_disk_point(rng);
      }
    };
    double worst_symmetry = 0.0;
    double worst_triangle = -kInfinity;
    for (int i = 0; i < 300; ++i) {
      const Point z = sample();
      const Point w = sample();
      const Point u = sample();
      worst_symmetry = std::max(worst_symmetry, std::abs(dist(s, z, w) - dist(s, w, z)));
      worst_triangle = std::max(worst_triangle, dist(s, z, w) - dist(s, z, u) - dist(s, u, w));
    }
    CHECK(worst_symmetry <= 1e-12);
    CHECK(worst_triangle <= 1e-10);
  }
}

TEST_CASE("Cayley transform is an isometry") {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Point z = random_disk_point(rng, 0.9);
    const Point w = random_disk_point(rng, 0.9);
    const double expected = disk_distance(z, w);
    worst = std::max(worst, std::abs(half_plane_distance(inverse_cayley(z), inverse_cayley(w)) - expected) /
                                std::max(1.0, expected));
    CHECK(std::abs(cayley(inverse_cayley(z)) - z) < 1e-12);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("quotient distance is stable under a wider deck window") {
  std::mt19937_64 rng(5);
  for (const double r : {0.1, 0.5, 0.9}) {
    const auto s = SurfaceModel::annulus(r);
    for (int i = 0; i < 200; ++i) {
      const Point z = random_annulus_point(rng, r);
      const Point w = random_annulus_point(rng, r);
      CHECK(std::abs(deck_minimized_distance(s, z, w, 2) - dist(s, z, w)) <= 1e-12);
    }
  }
  const auto pd = SurfaceModel::punctured_disk();
  for (int i = 0; i < 200; ++i) {
    const Point z = random_annulus_point(rng, 1e-4);
    const Point w = random_annulus_point(rng, 1e-4);
    CHECK(std::abs(deck_minimized_distance(pd, z, w, 2) - dist(pd, z, w)) <= 1e-12);
  }
}

TEST_CASE("quotient distances match the quadrature oracle") {
  std::mt19937_64 rng(17);
  for (const double r : {0.1, 0.5}) {
    for (int i = 0; i < 10; ++i) {
      const Point z = random_annulus_point(rng, r);
      const Point w = random_annulus_point(rng, r);
      CHECK(std::abs(oracle::annulus_geodesic_length(r, z, w) - dist(SurfaceModel::annulus(r), z, w)) < 1e-8);
    }
  }
  for (int i = 0; i < 10; ++i) {
    const Point z = random_annulus_point(rng, 0.01);
    const Point w = random_annulus_point(rng, 0.01);
    CHECK(std::abs(oracle::punctured_disk_geodesic_length(z, w) - dist(SurfaceModel::punctured_disk(), z, w)) < 1e-8);
  }
}

TEST_CASE("lifts to the half-plane") {
  const auto pd = SurfaceModel::punctured_disk();
  const Point w = lift_to_half_plane(pd, std::exp(-2.0 * kPi));
  CHECK(std::abs(w - Point(0, 1)) < 1e-12);

  std::mt19937_64 rng(23);
  for (const auto& s : {pd, SurfaceModel::annulus(0.1)}) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Point z = random_annulus_point(rng, s.kind() == SurfaceKind::Annulus ? 0.1 : 1e-3);
      const Point lifted = lift_to_half_plane(s, z);
      CHECK(lifted.imag() > 0.0);
      worst = std::max(worst, std::abs(project_from_half_plane(s, lifted) - z));
      CHECK(std::abs(project_from_half_plane(s, lift_deck_translate(s, z, 3)) - z) < 1e-12);
    }
    CHECK(worst < 1e-12);
  }
  CHECK_THROWS_AS(lift_to_half_plane(SurfaceModel::disk(), 0.3), UsageError);
}

TEST_CASE("ball membership") {
  const auto d = SurfaceModel::disk();
  CHECK(ball_contains(HyperbolicBall(d, 0.0, 1.0), 0.0));
  // artanh(0.5) = 0.5493061..., just above 0.5493.
  CHECK_FALSE(ball_contains(HyperbolicBall(d, 0.0, 0.5493), 0.5));
  CHECK(ball_contains(HyperbolicBall(d, 0.0, 0.54931), 0.5));
  CHECK_FALSE(ball_contains(HyperbolicBall(d, 0.0, 0.5), 0.5));
  CHECK_THROWS_AS(ball_contains(HyperbolicBall(d, 0.0, 1.0), 2.0), DomainError);
  CHECK_THROWS_AS(HyperbolicBall(d, 0.0, -1.0), UsageError);

  const HyperbolicBall ball(SurfaceModel::half_plane(), {1, 2}, 0.7);
  for (const Point z : ball_boundary(ball, 32)) CHECK(dist(ball.surface, ball.center, z) == doctest::Approx(0.7));
  const auto small = sample_closed_ball(ball, 2, 8);
  const auto large = sample_closed_ball(ball, 4, 16);
  for (const Point z : small) {
    const bool present = std::any_of(large.begin(), large.end(), [&](Point p) { return std::abs(p - z) < 1e-12; });
    CHECK(present);
  }
}

TEST_CASE("inradius examples") {
  const auto d = SurfaceModel::disk();
  const auto omega = SubdomainSpec::ball(HyperbolicBall(d, 0.0, 1.0));
  CHECK(inradius(d, omega, 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  const Point z = std::tanh(0.4);
  CHECK(std::abs(inradius(d, omega, z) - 0.6) < 1e-4);
  CHECK(inradius(d, SubdomainSpec::whole(), 0.3) == kInfinity);
  CHECK_THROWS_AS(inradius(d, omega, 0.9), DomainError);
}

TEST_CASE("Bloch radius examples") {
  const auto d = SurfaceModel::disk();
  const auto omega = SubdomainSpec::ball(HyperbolicBall(d, 0.0, 2.0));
  const std::vector<Point> centre{0.0};
  CHECK(bloch_radius(d, omega, centre) == doctest::Approx(2.0).epsilon(1e-6));

  std::vector<Point> grid;
  for (int i = -6; i <= 6; ++i) {
    for (int j = -6; j <= 6; ++j) {
      const Point p(0.12 * i, 0.12 * j);
      if (omega.contains(d, p)) grid.push_back(p);
    }
  }
  CHECK(std::abs(bloch_radius(d, omega, grid) - 2.0) < 1e-3);
  CHECK_THROWS_AS(bloch_radius(d, omega, std::vector<Point>{}), UsageError);
}

TEST_CASE("right half of the disk is not a Bloch domain") {
  // Points t -> 1 on the real axis have inradius growing like artanh(t).
  const auto d = SurfaceModel::disk();
  const auto half = SubdomainSpec::predicate([](Point z) { return z.real() > 0.0 && std::abs(z) < 1.0; }, {});
  InradiusOptions options;
  options.cap = 5.0;
  std::vector<Point> grid;
  double previous = 0.0;
  for (double t = 0.5; t < 1.0 - 1e-9; t = 0.5 * (1.0 + t)) {
    grid.push_back(t);
    const double radius = bloch_radius(d, half, grid, options);
    CHECK(radius >= previous);
    previous = radius;
  }
  CHECK(previous == kInfinity);

  // A ball of radius 10 comes within ~1e-17 of the unit circle, below double
  // resolution in the disk chart, so the larger cap is checked on the
  // isometric half-plane picture of the same domain, |w| > 1.
  const auto h = SurfaceModel::half_plane();
  const auto outside = SubdomainSpec::predicate([](Point w) { return w.imag() > 0.0 && std::abs(w) > 1.0; }, {});
  options.cap = 10.0;
  std::vector<Point> tall;
  for (double y = 2.0; y < 1e12; y *= 8.0) tall.emplace_back(0.0, y);
  CHECK(bloch_radius(h, outside, tall, options) == kInfinity);
  for (const Point w : {Point(0, 3), Point(-0.5, 0.5), Point(2, 0.1), Point(0.3, 0.9)}) {
    CHECK(outside.contains(h, w) == half.contains(d, cayley(w)));
  }
}

TEST_CASE("boundary companions follow a radius to the boundary") {
  const double M = 1.5;
  const Point tau = std::polar(1.0, 0.7);
  double previous = kInfinity;
  for (int n = 1; n <= 12; ++n) {
    const Point z = (1.0 - std::pow(2.0, -n)) * tau;
    // A companion at distance just below M in the worst (tangential) direction.
    const Point unit = tau * Point(0, 1);
    double lo = 0.0;
    double hi = 1.0 - std::abs(z);
    for (int k = 0; k < 80; ++k) {
      const double mid = 0.5 * (lo + hi);
      (disk_distance(z, z + mid * unit) < M ? lo : hi) = mid;
    }
    const Point w = z + lo * unit;
    CHECK(disk_distance(z, w) < M);
    const double gap = std::abs(w - tau);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("surface names round-trip") {
  for (const auto& s : {SurfaceModel::disk(), SurfaceModel::half_plane(), SurfaceModel::punctured_disk()}) {
    CHECK(SurfaceModel::from_name(s.name()) == s);
    CHECK(s.contains(s.base_point()));
  }
  CHECK(SurfaceModel::from_name("annulus", 0.3) == SurfaceModel::annulus(0.3));
  CHECK_THROWS(SurfaceModel::from_name("torus"));
}
