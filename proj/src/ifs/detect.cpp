#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "hypdyn/ifs.hpp"

namespace hypdyn {
namespace {

struct TwoClusters {
  Point first;
  Point second;
  double gap;
  double spread;  // max distance of a point to its own centre
  std::vector<int> label;
};

std::optional<TwoClusters> two_means(std::span<const Point> points) {
  if (points.size() < 4) return std::nullopt;
  Point mean = 0.0;
  for (const Point p : points) mean += p;
  mean /= static_cast<double>(points.size());
  auto farthest = [&](Point from) {
    return *std::max_element(points.begin(), points.end(),
                             [&](Point a, Point b) { return std::abs(a - from) < std::abs(b - from); });
  };
  Point c1 = farthest(mean);
  Point c2 = farthest(c1);
  if (c1 == c2) return std::nullopt;

  std::vector<int> label(points.size(), 0);
  for (int iter = 0; iter < 50; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const int l = std::abs(points[i] - c1) <= std::abs(points[i] - c2) ? 0 : 1;
      changed = changed || l != label[i];
      label[i] = l;
    }
    Point s[2] = {0.0, 0.0};
    std::size_t count[2] = {0, 0};
    for (std::size_t i = 0; i < points.size(); ++i) {
      s[label[i]] += points[i];
      ++count[label[i]];
    }
    if (count[0] == 0 || count[1] == 0) return std::nullopt;
    c1 = s[0] / static_cast<double>(count[0]);
    c2 = s[1] / static_cast<double>(count[1]);
    if (!changed && iter > 0) break;
  }
  double spread = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    spread = std::max(spread, std::abs(points[i] - (label[i] == 0 ? c1 : c2)));
  }
  return TwoClusters{c1, c2, std::abs(c1 - c2), spread, std::move(label)};
}

// Boundary point approached by every probe image over the detector window.
std::optional<BoundaryPoint> boundary_limit(const OrbitTrace& trace, std::size_t window,
                                            const DetectorTolerances& tol) {
  const std::vector<Point>& last = trace.steps.back().images;
  const Point z0 = last.front();
  const SurfaceModel& s = trace.surface;

  // Every probe image in the window must sit next to tau.
  auto residual_to = [&](Point tau) {
    double worst = 0.0;
    for (std::size_t n = trace.size() - window; n < trace.size(); ++n) {
      for (const Point w : trace.steps[n].images) worst = std::max(worst, std::abs(w - tau));
    }
    return worst;
  };
  auto accept = [&](Point tau) -> std::optional<BoundaryPoint> {
    const double r = residual_to(tau);
    if (r < tol.tol_boundary) return BoundaryPoint{BoundaryCoordinate{tau, false}, r};
    return std::nullopt;
  };

  switch (s.kind()) {
    case SurfaceKind::HalfPlane: {
      double smallest = kInfinity;
      for (const Point w : last) smallest = std::min(smallest, std::abs(w));
      if (smallest > 1.0 / tol.tol_boundary) {
        double lo = kInfinity;
        double hi = -kInfinity;
        for (std::size_t n = trace.size() - window; n < trace.size(); ++n) {
          const double a = std::arg(trace.steps[n].images.front());
          lo = std::min(lo, a);
          hi = std::max(hi, a);
        }
        if (hi - lo < tol.tol_gap) return BoundaryPoint{BoundaryCoordinate{Point(), true}, 1.0 / smallest};
        return std::nullopt;
      }
      return accept(Point(z0.real(), 0.0));
    }
    case SurfaceKind::Disk:
      return accept(z0 / std::abs(z0));
    case SurfaceKind::PuncturedDisk:
      if (std::abs(z0) < tol.tol_boundary) return accept(Point(0.0));
      return accept(z0 / std::abs(z0));
    case SurfaceKind::Annulus: {
      const double m = std::abs(z0);
      const double r = s.inner_radius();
      return accept((m - r < 1.0 - m ? r : 1.0) * z0 / m);
    }
  }
  return std::nullopt;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

}  // namespace

std::string verdict_name(const Verdict& verdict) {
  static const char* names[] = {"interior-constant", "boundary-point", "compactly-divergent", "oscillating",
                                "undecided"};
  return names[verdict.index()];
}

std::size_t detector_window(std::size_t trace_size, const DetectorTolerances& tol) {
  const auto fraction = static_cast<std::size_t>(std::ceil(tol.window_fraction * static_cast<double>(trace_size)));
  return std::min(trace_size, std::max(fraction, tol.min_window));
}

bool escape_ladder_holds(std::span<const double> base_distance, int ladder_top, std::size_t window_begin) {
  for (int t = 1; t <= ladder_top; ++t) {
    const double threshold = t;
    const auto first = std::find_if(base_distance.begin(), base_distance.end(),
                                    [&](double d) { return d >= threshold; });
    if (first == base_distance.end()) return false;
    const auto from = std::max(first, base_distance.begin() + static_cast<std::ptrdiff_t>(window_begin));
    if (from == base_distance.end()) continue;
    if (*std::min_element(from, base_distance.end()) < threshold - 0.5) return false;
  }
  return true;
}

Verdict detect(const OrbitTrace& trace, const DetectorTolerances& tol) {
  const std::size_t n = trace.size();
  if (n < tol.min_window) {
    return Undecided{"trace has " + std::to_string(n) + " records, detector window needs " +
                     std::to_string(tol.min_window)};
  }
  const std::size_t window = detector_window(n, tol);
  const std::size_t begin = n - window;

  std::vector<double> base(n);
  for (std::size_t k = 0; k < n; ++k) base[k] = trace.steps[k].base_distance;

  double max_diam = 0.0;
  double max_step = 0.0;
  for (std::size_t k = begin; k < n; ++k) {
    max_diam = std::max(max_diam, trace.steps[k].diameter);
    max_step = std::max(max_step, trace.steps[k].step);
  }
  if (max_diam < tol.tol_diam && max_step < tol.tol_step && std::isfinite(base[n - 1])) {
    const StepRecord& last = trace.steps.back();
    return InteriorConstant{last.images.front(), std::max(last.diameter, last.step)};
  }

  if (escape_ladder_holds(base, tol.ladder_top, begin)) {
    if (tol.embedded) {
      if (auto bp = boundary_limit(trace, window, tol)) return *bp;
    }
    const double growth = window > 1 ? (base[n - 1] - base[begin]) / static_cast<double>(window - 1) : 0.0;
    return CompactlyDivergent{growth};
  }

  std::vector<Point> tail;
  tail.reserve(window);
  for (std::size_t k = begin; k < n; ++k) tail.push_back(trace.steps[k].images.front());
  std::string cluster_reason = "fewer than two separated clusters";
  if (auto clusters = two_means(tail)) {
    // Each cluster must be revisited in both halves of the window.
    std::size_t visits[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t i = 0; i < tail.size(); ++i) ++visits[clusters->label[i]][2 * i >= tail.size() ? 1 : 0];
    const bool recurrent = visits[0][0] >= 2 && visits[0][1] >= 2 && visits[1][0] >= 2 && visits[1][1] >= 2;
    const bool separated = clusters->gap > tol.tol_gap && clusters->spread < 0.25 * clusters->gap;
    if (recurrent && separated) return Oscillating{clusters->first, clusters->second, clusters->gap};
    cluster_reason = !separated ? "cluster gap " + fmt(clusters->gap) + " not separated (spread " +
                                      fmt(clusters->spread) + ")"
                                : "clusters not revisited throughout the window";
  }
  std::string reason = "no escape ladder; ";
  if (max_diam >= tol.tol_diam) reason += "diameter " + fmt(max_diam) + " >= tol_diam; ";
  if (max_step >= tol.tol_step) reason += "step " + fmt(max_step) + " >= tol_step; ";
  reason += cluster_reason;
  return Undecided{reason};
}

}  // namespace hypdyn
