#include <cmath>
#include <cstdio>

#include "hypdyn/families.hpp"
#include "hypdyn/validators.hpp"

namespace hypdyn {
namespace {

std::string stuck(int j, const char* phase, Point current, std::size_t cap) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "phase %s of j=%d exceeded %zu applications; current value (%.17g, %.17g)", phase, j,
                cap, current.real(), current.imag());
  return buf;
}

}  // namespace

OscillatingConstruction oscillating_construction(int J, std::size_t step_cap, const DetectorTolerances& tol) {
  if (J < 1 || J > 6) throw UsageError("the oscillating construction supports 1 <= J <= 6");
  const SurfaceModel H = SurfaceModel::half_plane();
  const HolMap F = families::translation(-1.0);
  const Point i(0.0, 1.0);

  // f_0 = g_0, f_1 = F, then phases g_j^{n_j}, F^{j + m_j}.
  std::vector<HolMap> maps{families::parabolic_conjugate(0), F};
  std::vector<std::size_t> nu{0, 1};
  Point current = eval(F, eval(maps[0], i));

  ScenarioReport report("oscillating");
  report.param("J", J);
  report.param("step_cap", step_cap);
  std::vector<double> n_j;
  std::vector<double> m_j;
  double fixed_point_error = 0.0;

  for (int j = 1; j <= J; ++j) {
    const HolMap g = families::parabolic_conjugate(j);
    const double jd = j;
    fixed_point_error = std::max(fixed_point_error, std::abs(eval(g, Point(jd)) - jd));
    const double target = std::ldexp(1.0, -j);

    std::size_t n = 0;
    while (std::abs(current - jd) >= target) {
      if (n == step_cap) throw ScenarioError(stuck(j, "g_j", current, step_cap));
      current = eval(g, current);
      maps.push_back(g);
      ++n;
    }
    for (int k = 0; k < j; ++k) {
      current = eval(F, current);
      maps.push_back(F);
    }
    nu.push_back(nu.back() + n + static_cast<std::size_t>(j));

    std::size_t m = 0;
    while (std::abs(current) <= jd) {
      if (m == step_cap) throw ScenarioError(stuck(j, "F", current, step_cap));
      current = eval(F, current);
      maps.push_back(F);
      ++m;
    }
    nu.push_back(nu.back() + m);
    n_j.push_back(static_cast<double>(n));
    m_j.push_back(static_cast<double>(m));
  }

  MapSequence sequence = MapSequence::from_list(H, maps, F);
  report.measure("n_j", n_j);
  report.measure("m_j", m_j);
  report.measure("breakpoints", std::vector<double>(nu.begin(), nu.end()));
  report.check_le("g_j_fixes_j", fixed_point_error, 1e-10);

  // (c) and (d) against the stitched sequence itself.
  bool spacing = true;
  bool layout = sequence.at(0) == families::parabolic_conjugate(0) && sequence.at(1) == F;
  for (int j = 1; j <= J; ++j) {
    const std::size_t odd = nu[2 * j - 1];
    const std::size_t even = nu[2 * j];
    const std::size_t next = nu[2 * j + 1];
    spacing = spacing && even >= odd + static_cast<std::size_t>(j);
    const HolMap g = families::parabolic_conjugate(j);
    for (std::size_t k = odd + 1; k <= even - j; ++k) layout = layout && sequence.at(k) == g;
    for (std::size_t k = even - j + 1; k <= next; ++k) layout = layout && sequence.at(k) == F;
  }
  report.check("spacing_c", spacing);
  report.check("layout_d", layout);

  // (e) from an independent left orbit over the whole sequence.
  const std::vector<Point> probe{i};
  const OrbitTrace trace = left_orbit(sequence, probe, nu.back() + 1);
  std::vector<Point> at_breakpoints;
  for (const std::size_t k : nu) at_breakpoints.push_back(trace.steps[k].images[0]);
  for (int j = 0; j <= J; ++j) {
    const std::string tag = "j=" + std::to_string(j);
    report.check_lt(tag + "/near_zero", std::abs(at_breakpoints[2 * j]), std::ldexp(1.0, -j));
    report.check_gt(tag + "/far_out", std::abs(at_breakpoints[2 * j + 1]), static_cast<double>(j));
  }
  // The worked j = 1 step in the text states |L_{nu_3}(i)| > 2; recorded only.
  report.measure("abs_L_nu3", std::abs(at_breakpoints[3]));

  DetectorTolerances intrinsic = tol;
  intrinsic.embedded = false;
  const Verdict verdict = detect(trace, intrinsic);
  report.measure("verdict", verdict_name(verdict));
  report.check("verdict_compactly_divergent", std::holds_alternative<CompactlyDivergent>(verdict));

  DetectorTolerances embedded = tol;
  embedded.embedded = true;
  const Verdict boundary = detect(trace, embedded);
  report.measure("embedded_verdict", verdict_name(boundary));
  report.check("no_single_boundary_limit", !std::holds_alternative<BoundaryPoint>(boundary));

  return OscillatingConstruction{std::move(sequence), std::move(nu), std::move(at_breakpoints), std::move(report)};
}

}  // namespace hypdyn
