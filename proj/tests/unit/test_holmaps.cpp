#include <doctest.h>

#include <cmath>
#include <random>

#include "hypdyn/families.hpp"
#include "hypdyn/holmaps.hpp"
#include "hypdyn/serialize.hpp"

using namespace hypdyn;

namespace {

Point random_in_disk(std::mt19937_64& rng, double max_modulus) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(max_modulus * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
}

Point random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

HolMap random_blaschke(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> degree(1, 4);
  std::uniform_real_distribution<double> modulus(0.5, 1.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::vector<Point> zeros;
  for (int k = degree(rng); k > 0; --k) zeros.push_back(random_in_disk(rng, 0.9));
  return HolMap::blaschke(std::polar(modulus(rng), angle(rng)), zeros);
}

}  // namespace

TEST_CASE("evaluation examples") {
  CHECK(std::abs(eval(families::elliptic_tilt(1), Point(0, 1)) - Point(0, 1)) < 1e-15);
  CHECK(eval(HolMap::identity(), Point(0.3, -2.0)) == Point(0.3, -2.0));
  const HolMap g1 = HolMap::conjugate(families::elliptic_tilt(1), families::translation(-1.0));
  CHECK(std::abs(eval(g1, 1.0) - 1.0) < 1e-12);
  CHECK(std::abs(eval(families::exp_into_horodisk(), Point(0, 1)) - Point(std::exp(-2.0 * kPi), 1)) < 1e-15);
  CHECK_THROWS_AS(eval(HolMap::mobius(1.0, 0.0, 1.0, 1.0), -1.0), NumericError);
}

TEST_CASE("Mobius maps are stored with unit determinant") {
  const HolMap m = HolMap::mobius(2.0, 1.0, 0.0, 3.0);
  CHECK(std::abs(m.get<Mobius>()->determinant() - 1.0) < 1e-15);
  CHECK_THROWS_AS(HolMap::mobius(1.0, 2.0, 2.0, 4.0), UsageError);
}

TEST_CASE("closed form of the parabolic conjugates") {
  for (int n = 0; n <= 6; ++n) {
    const HolMap direct = HolMap::conjugate(families::elliptic_tilt(n), families::translation(-1.0));
    for (const Point w : {Point(0, 1), Point(2.5, 0.3), Point(-4, 7)}) {
      CHECK(std::abs(eval(direct, w) - eval(families::parabolic_conjugate(n), w)) < 1e-12 * (1 + std::abs(w)));
    }
    const auto fixed = fixed_points(*families::parabolic_conjugate(n).get<Mobius>());
    REQUIRE(fixed.size() == 2);
    for (const auto& p : fixed) {
      CHECK_FALSE(p.infinite);
      CHECK(std::abs(p.value - static_cast<double>(n)) < 1e-7);
    }
  }
}

TEST_CASE("annulus automorphisms compose by the sign table") {
  const double r = 0.4;
  const double theta = 0.9;
  const double eta = -2.1;
  auto aut = [&](double angle, int sign) { return HolMap::annulus_aut(angle, sign, r); };
  const HolMap mm = compose(aut(theta, -1), aut(eta, -1));
  REQUIRE(mm.get<AnnulusAut>() != nullptr);
  CHECK(mm.get<AnnulusAut>()->sign == 1);
  CHECK(std::remainder(mm.get<AnnulusAut>()->theta - (theta - eta), 2 * kPi) == doctest::Approx(0.0));
  const HolMap pm = compose(aut(theta, 1), aut(eta, -1));
  REQUIRE(pm.get<AnnulusAut>() != nullptr);
  CHECK(pm.get<AnnulusAut>()->sign == -1);
  CHECK(std::remainder(pm.get<AnnulusAut>()->theta - (theta + eta), 2 * kPi) == doctest::Approx(0.0));

  std::mt19937_64 rng(9);
  for (const int s1 : {1, -1}) {
    for (const int s2 : {1, -1}) {
      const HolMap f = aut(theta, s1);
      const HolMap g = aut(eta, s2);
      const HolMap fg = compose(f, g);
      CHECK(fg.get<AnnulusAut>() != nullptr);
      for (int i = 0; i < 20; ++i) {
        const Point z = std::polar(0.45 + 0.5 * std::abs(random_in_disk(rng, 1.0)), 6.0 * i);
        CHECK(std::abs(eval(fg, z) - eval(f, eval(g, z))) < 1e-12);
      }
    }
  }
  CHECK(inverse(aut(theta, -1)) == aut(theta, -1));
}

TEST_CASE("composition identities") {
  const HolMap f = HolMap::mobius(Point(1, 2), 0.5, Point(0, 0.3), 2.0);
  CHECK(compose(f, HolMap::identity()) == f);
  CHECK(inverse(families::translation(1.0)) == families::translation(-1.0));

  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const HolMap a = HolMap::mobius(random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng));
    const HolMap b = HolMap::mobius(random_complex(rng), random_complex(rng), random_complex(rng), random_complex(rng));
    const HolMap c = random_blaschke(rng);
    const Point z = random_in_disk(rng, 0.5);
    const Mobius id = *compose(a, inverse(a)).get<Mobius>();
    CHECK(std::abs(id.a - id.d) + std::abs(id.b) + std::abs(id.c) < 1e-12 * (1 + std::abs(id.a)));
    CHECK(std::abs(eval(compose(a, b), z) - eval(a, eval(b, z))) < 1e-12 * (1 + std::abs(eval(compose(a, b), z))));
    const Point left = eval(compose(a, compose(b, c)), z);
    const Point right = eval(compose(compose(a, b), c), z);
    CHECK(std::abs(left - right) < 1e-10 * (1 + std::abs(left)));
  }
}

TEST_CASE("powers") {
  const HolMap t = families::translation(-1.0);
  CHECK(std::abs(eval(power(t, 37), Point(0, 1)) - Point(-37, 1)) < 1e-12);
  CHECK(std::abs(eval(power(t, -5), Point(0, 1)) - Point(5, 1)) < 1e-12);
  CHECK(power(t, 0).is_identity());
  const HolMap half = families::half_scaled(0.0, 0.0);
  CHECK(std::abs(eval(power(half, 10), 1.0) - std::pow(0.5, 10)) < 1e-15);
}

TEST_CASE("fixed points") {
  const auto translation = fixed_points(*families::translation(-1.0).get<Mobius>());
  CHECK(translation.size() == 2);
  CHECK(translation[0].infinite);
  CHECK(translation[1].infinite);

  const double delta = 0.3;
  const double theta = 1.1;
  const auto roots = fixed_points(*families::half_scaled(delta, theta).get<Mobius>());
  const auto finite = std::find_if(roots.begin(), roots.end(), [](const ExtendedPoint& p) { return !p.infinite; });
  REQUIRE(finite != roots.end());
  CHECK(std::abs(finite->value - std::polar(2 * delta, theta)) < 1e-14);
  CHECK(std::count_if(roots.begin(), roots.end(), [](const ExtendedPoint& p) { return p.infinite; }) == 1);
  CHECK_THROWS_AS(fixed_points(Mobius::identity()), UsageError);
}

TEST_CASE("derivatives") {
  CHECK(std::abs(derivative(families::half_scaled(0.0, 0.0), 0.0) - 0.5) < 1e-15);
  CHECK(std::abs(derivative(HolMap::identity(), Point(3, 4)) - 1.0) < 1e-15);
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const HolMap b = random_blaschke(rng);
    const Point z = random_in_disk(rng, 0.8);
    const double h = 1e-6;
    const Point fd = (eval(b, z + h) - eval(b, z - h)) / (2 * h);
    const Point exact = derivative(b, z);
    worst = std::max(worst, std::abs(fd - exact) / std::max(1e-3, std::abs(exact)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("classification") {
  const auto half = classify(families::half_scaled(0.0, 0.0), SurfaceModel::disk());
  REQUIRE(std::holds_alternative<AttractingInterior>(half));
  CHECK(std::abs(std::get<AttractingInterior>(half).point) < 1e-15);
  CHECK(std::get<AttractingInterior>(half).multiplier_modulus == doctest::Approx(0.5));

  CHECK(std::holds_alternative<CompactlyDivergentMap>(classify(families::translation(-1.0), SurfaceModel::half_plane())));
  for (int n = 0; n <= 4; ++n) {
    const auto cls = classify(families::elliptic_tilt(n), SurfaceModel::half_plane());
    CHECK((std::holds_alternative<PeriodicAut>(cls) || std::holds_alternative<PseudoperiodicAut>(cls)));
  }
  const auto quarter = classify(families::rotation(kPi / 2), SurfaceModel::disk());
  REQUIRE(std::holds_alternative<PeriodicAut>(quarter));
  CHECK(std::get<PeriodicAut>(quarter).period == 4);
  CHECK(std::holds_alternative<PseudoperiodicAut>(classify(families::rotation(1.0), SurfaceModel::disk())));
}

TEST_CASE("annulus automorphisms with a fixed point are rotations of modulus one") {
  const double r = 0.25;
  for (const double theta : {0.0, 0.5, 2.0}) {
    const HolMap flip = HolMap::annulus_aut(theta, -1, r);
    // phi_{theta,-1} fixes e^{i theta / 2} sqrt(r).
    const Point z = std::polar(std::sqrt(r), 0.5 * theta);
    CHECK(std::abs(eval(flip, z) - z) < 1e-14);
    CHECK(std::abs(std::abs(derivative(flip, z)) - 1.0) < 1e-10);
  }
}

TEST_CASE("self-map guard") {
  CHECK(is_self_map(families::half_scaled(0.4, 0.3), SurfaceModel::disk(), 256));
  CHECK_FALSE(is_self_map(families::half_scaled(0.6, 0.3), SurfaceModel::disk(), 256));
  CHECK(is_self_map(HolMap::annulus_aut(1.0, -1, 0.3), SurfaceModel::annulus(0.3), 256));
  CHECK(is_self_map(families::exp_into_horodisk(), SurfaceModel::half_plane(), 256));
  CHECK_FALSE(is_self_map(HolMap::exp_affine(Point(0, 0.5)), SurfaceModel::half_plane(), 256));
}

TEST_CASE("Schwarz-Pick on random Blaschke products") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const HolMap f = random_blaschke(rng);
    for (int j = 0; j < 20; ++j) {
      const Point z = random_in_disk(rng, 0.9);
      const Point w = random_in_disk(rng, 0.9);
      CHECK(disk_distance(eval(f, z), eval(f, w)) <= disk_distance(z, w) + 1e-10);
    }
  }
}

TEST_CASE("sup deviation") {
  const auto d = SurfaceModel::disk();
  const HolMap F = families::half_scaled(0.0, 0.0);
  const HyperbolicBall ball(d, 0.0, 1.0);
  CHECK(sup_deviation(F, F, ball) == 0.0);
  double previous = kInfinity;
  for (const double delta : {0.1, 0.01, 0.001}) {
    const double dev = sup_deviation(families::half_scaled(delta, 0.0), F, ball);
    CHECK(dev > 0.0);
    CHECK(dev < previous);
    previous = dev;
  }

  const HolMap T = families::translation(-1.0);
  const HyperbolicBall hball(SurfaceModel::half_plane(), Point(0, 1), 1.0);
  previous = kInfinity;
  for (int n = 1; n <= 6; ++n) {
    const double dev = sup_deviation(families::parabolic_conjugate(n), T, hball);
    CHECK(dev < previous);
    previous = dev;
  }
}

TEST_CASE("JSON round-trip of every variant") {
  const std::vector<HolMap> maps{
      HolMap::mobius(Point(1, 2), 0.5, Point(0, 0.3), 2.0),
      HolMap::blaschke(Point(0, 0.8), {0.1, Point(0.2, -0.5)}),
      HolMap::exp_affine(Point(0.25, 1.5)),
      HolMap::annulus_aut(0.7, -1, 0.3),
      HolMap::conjugate(families::elliptic_tilt(2), families::translation(-1.0)),
      HolMap::composite({families::half_scaled(0.1, 1.0), HolMap::blaschke(1.0, {0.3})}),
  };
  for (const auto& m : maps) {
    CAPTURE(m.variant_name());
    const auto j = holmap_to_json(m);
    CHECK(j.at("variant") == m.variant_name());
    const HolMap back = holmap_from_json(j);
    CHECK(back == m);
    CHECK(holmap_to_json(back) == j);
  }
  CHECK_THROWS_AS(holmap_from_json(nlohmann::json{{"variant", "spline"}}), FormatError);
  CHECK_THROWS_AS(holmap_from_json(nlohmann::json{{"variant", "blaschke"}, {"prefactor", {1, 0}}, {"zeros", {{2, 0}}}}),
                  UsageError);
}
