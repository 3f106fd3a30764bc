#include <algorithm>
#include <cmath>
#include <random>

#include "hypdyn/validators.hpp"

namespace hypdyn {
namespace {

// A companion of z at a small hyperbolic distance, for infinitesimal ratios.
Point nearby(const SurfaceModel& surface, Point z, int direction) {
  return ball_boundary(HyperbolicBall(surface, z, 1e-4), 16)[static_cast<std::size_t>(direction)];
}

// Dilation of f at z: ratio of distances to a companion 1e-6 away.
double local_dilation(const SurfaceModel& surface, const HolMap& f, Point z) {
  const Point w = ball_boundary(HyperbolicBall(surface, z, 1e-6), 1).front();
  const double d = dist(surface, z, w);
  if (d == 0.0) return 0.0;
  return dist(surface, eval(f, z), eval(f, w)) / d;
}

// Compass search for the largest local dilation, moving the base point by
// hyperbolic steps that halve whenever no neighbour improves.
double refine_dilation(const SurfaceModel& surface, const HolMap& f, Point z) {
  double best = local_dilation(surface, f, z);
  for (double step = 0.5; step > 1e-7;) {
    bool moved = false;
    for (const Point w : ball_boundary(HyperbolicBall(surface, z, step), 8)) {
      if (!surface.contains(w)) continue;
      const double value = local_dilation(surface, f, w);
      if (value > best) {
        best = value;
        z = w;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

std::string describe(Point z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", z.real(), z.imag());
  return buf;
}

}  // namespace

double estimate_contraction(const SurfaceModel& surface, const SubdomainSpec& omega, std::span<const HolMap> maps,
                            const ContractionOptions& options) {
  const std::vector<Point> grid = surface_samples(surface, options.guard_samples);
  for (std::size_t m = 0; m < maps.size(); ++m) {
    for (const Point z : grid) {
      bool inside = false;
      try {
        inside = omega.contains(surface, eval(maps[m], z));
      } catch (const NumericError&) {
        inside = false;
      }
      if (!inside) {
        throw ScenarioError("map " + std::to_string(m) + " sends " + describe(z) +
                            " outside the subdomain; it is not a map into a Bloch domain");
      }
    }
  }

  // The pair list depends only on the seed, so a larger `pairs` extends it.
  const std::vector<Point> pool = surface_samples(surface, 4096, 4.0);
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> direction(0, 15);
  std::bernoulli_distribution close(0.5);

  // Local dilations over a coarse pool, with the best few refined; this part
  // does not depend on the pair count.
  struct Start {
    double value;
    std::size_t map;
    Point z;
  };
  std::vector<Start> starts;
  for (const Point z : surface_samples(surface, 512, 4.0)) {
    for (std::size_t m = 0; m < maps.size(); ++m) starts.push_back({local_dilation(surface, maps[m], z), m, z});
  }
  const std::size_t keep = std::min<std::size_t>(4, starts.size());
  std::partial_sort(starts.begin(), starts.begin() + static_cast<std::ptrdiff_t>(keep), starts.end(),
                    [](const Start& a, const Start& b) { return a.value > b.value; });
  double worst = 0.0;
  for (std::size_t k = 0; k < keep; ++k) {
    worst = std::max(worst, refine_dilation(surface, maps[starts[k].map], starts[k].z));
  }

  for (std::size_t p = 0; p < options.pairs; ++p) {
    const Point z = pool[pick(rng)];
    const Point w = close(rng) ? nearby(surface, z, direction(rng)) : pool[pick(rng)];
    const double d = dist(surface, z, w);
    if (d == 0.0) continue;
    for (const HolMap& f : maps) worst = std::max(worst, dist(surface, eval(f, z), eval(f, w)) / d);
  }
  return worst;
}

BlochInstance make_bloch_instance(MapSequence maps, SubdomainSpec omega, std::function<Point(std::size_t)> fixed_point,
                                  std::optional<Point> fixed_point_limit, std::size_t measure_count,
                                  const ContractionOptions& options) {
  std::vector<HolMap> prefix;
  prefix.reserve(measure_count);
  for (std::size_t n = 0; n < measure_count; ++n) prefix.push_back(maps.at(n));
  const double l = estimate_contraction(maps.surface(), omega, prefix, options);
  return BlochInstance{std::move(maps), std::move(omega), std::move(fixed_point), fixed_point_limit, l};
}

ScenarioReport bloch_left_ifs(const BlochInstance& instance, std::size_t steps, const DetectorTolerances& tol) {
  const SurfaceModel& X = instance.maps.surface();
  ScenarioReport report("bloch-left");
  report.param("surface", X.name());
  report.param("steps", steps);

  std::vector<Point> probes{X.base_point()};
  for (const Point z : surface_samples(X, 3, 3.0)) probes.push_back(z);
  const OrbitTrace trace = left_orbit(instance.maps, probes, steps);
  const Verdict verdict = detect(trace, tol);

  report.measure("contraction", instance.contraction);
  report.measure("verdict", verdict_name(verdict));
  report.check_lt("contraction_below_one", instance.contraction, 1.0 - 1e-9);
  report.check_lt("final_diameter", trace.steps.back().diameter, tol.tol_diam);

  const auto* constant = std::get_if<InteriorConstant>(&verdict);
  if (instance.fixed_point_limit) {
    const Point limit = *instance.fixed_point_limit;
    report.measure("fixed_point_limit", limit);
    report.check("verdict_interior_constant", constant != nullptr);
    const double miss = constant ? dist(X, constant->point, limit) : kInfinity;
    if (constant) report.measure("limit_point", constant->point);
    report.check_lt("distance_to_fixed_point_limit", miss, 1e-4);
  } else {
    const double swing = dist(X, instance.fixed_point(steps - 1), instance.fixed_point(steps - 2));
    report.measure("fixed_point_swing", swing);
    report.check("verdict_not_interior_constant", constant == nullptr);
  }
  return report;
}

ScenarioReport contraction_theorem_bound(const BlochInstance& instance, std::size_t steps, Point x,
                                         double contraction_scale) {
  if (!instance.fixed_point_limit) throw UsageError("the three-term bound needs convergent fixed points");
  const SurfaceModel& X = instance.maps.surface();
  X.require(x, "bound probe");
  const Point z_inf = *instance.fixed_point_limit;
  const double l = contraction_scale * instance.contraction;

  ScenarioReport report("contraction-bound");
  report.param("steps", steps);
  report.param("contraction_scale", contraction_scale);
  report.measure("probe", x);
  report.measure("contraction", l);

  Point image = x;
  double middle = 0.0;  // sum_{j<n} l^{n-j} d(x_j, x_{j+1})
  double l_power = 1.0;
  double worst_excess = -kInfinity;
  std::size_t worst_nu = 0;
  std::vector<double> lhs_samples;
  std::vector<double> rhs_samples;
  for (std::size_t n = 0; n < steps; ++n) {
    image = eval(instance.maps.at(n), image);
    l_power *= l;
    if (n > 0) middle = l * (middle + dist(X, instance.fixed_point(n - 1), instance.fixed_point(n)));
    const double lhs = dist(X, image, z_inf);
    const double rhs =
        l_power * dist(X, x, instance.fixed_point(0)) + middle + dist(X, instance.fixed_point(n), z_inf);
    if (lhs - rhs > worst_excess) {
      worst_excess = lhs - rhs;
      worst_nu = n;
    }
    if ((n & (n + 1)) == 0) {  // n = 2^k - 1
      lhs_samples.push_back(lhs);
      rhs_samples.push_back(rhs);
    }
  }
  report.measure("lhs_at_nu_2^k-1", lhs_samples);
  report.measure("rhs_at_nu_2^k-1", rhs_samples);
  report.measure("worst_nu", static_cast<double>(worst_nu));
  report.check_le("bound_all_nu", worst_excess, 1e-9);
  return report;
}

}  // namespace hypdyn
