#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hypdyn/cli.hpp"

namespace hypdyn::cli {
namespace {

constexpr double kPanel = 360.0;
constexpr double kMargin = 30.0;

struct Range {
  double lo = kInfinity;
  double hi = -kInfinity;
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

// Polyline of (x, y) pairs scaled into a panel whose left edge is at x0.
void panel(std::ostringstream& svg, double x0, const std::vector<std::pair<double, double>>& pts, const char* title,
           const char* colour) {
  Range rx;
  Range ry;
  for (const auto& [x, y] : pts) {
    rx.add(x);
    ry.add(y);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n", x0,
                kMargin, kPanel, kPanel);
  svg << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">%s</text>\n", x0, kMargin - 8.0, title);
  svg << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\">x [%.4g, %.4g]  y [%.4g, %.4g]</text>\n", x0,
                kMargin + kPanel + 14.0, rx.lo, rx.hi, ry.lo, ry.hi);
  svg << buf;
  svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1\" points=\"";
  for (const auto& [x, y] : pts) {
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    const double px = x0 + (x - rx.lo) / rx.span() * kPanel;
    const double py = kMargin + kPanel - (y - ry.lo) / ry.span() * kPanel;
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px, py);
    svg << buf;
  }
  svg << "\"/>\n";
}

}  // namespace

std::string trace_svg(const OrbitTrace& trace) {
  std::vector<std::pair<double, double>> path;
  std::vector<std::pair<double, double>> profile;
  for (std::size_t n = 0; n < trace.steps.size(); ++n) {
    const Point z = trace.steps[n].images.front();
    path.emplace_back(z.real(), z.imag());
    profile.emplace_back(static_cast<double>(n), trace.steps[n].base_distance);
  }
  std::ostringstream svg;
  const double width = 3.0 * kMargin + 2.0 * kPanel;
  const double height = 2.0 * kMargin + kPanel + 10.0;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  panel(svg, kMargin, path, "probe 0 (Euclidean)", "steelblue");
  panel(svg, 2.0 * kMargin + kPanel, profile, "distance to base vs nu", "firebrick");
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hypdyn::cli
