#include <algorithm>

#include "hypdyn/ifs.hpp"

namespace hypdyn {
namespace {

void check_inputs(const SurfaceModel& surface, std::span<const Point> probes, std::size_t steps) {
  if (probes.empty()) throw UsageError("orbit needs at least one probe");
  if (steps == 0) throw UsageError("orbit needs at least one step");
  for (const Point z : probes) surface.require(z, "probe");
}

HolMap fetch(const MapSequence& seq, std::size_t n, const OrbitOptions& options) {
  return options.guard_self_maps ? seq.checked(n) : seq.at(n);
}

// Builds the record for step n from fresh images. `previous` is probe 0's
// image at step n-1 (the probe itself for n = 0).
StepRecord make_record(const SurfaceModel& surface, std::vector<Point> images, Point probe0, Point previous,
                       std::size_t n) {
  for (const Point w : images) {
    if (!surface.contains(w)) throw OrbitError(n, "image left the " + surface.name());
  }
  StepRecord rec;
  rec.diameter = 0.0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      rec.diameter = std::max(rec.diameter, dist(surface, images[i], images[j]));
    }
  }
  rec.step = dist(surface, images.front(), previous);
  rec.base_distance = dist(surface, images.front(), probe0);
  rec.images = std::move(images);
  return rec;
}

OrbitTrace start_trace(Side side, const SurfaceModel& surface, std::span<const Point> probes,
                       std::size_t steps) {
  OrbitTrace trace;
  trace.side = side;
  trace.surface = surface;
  trace.probes.assign(probes.begin(), probes.end());
  trace.steps.reserve(steps);
  return trace;
}

// Runs `images_at(n)` for every step, wrapping evaluation failures.
template <class ImagesAt>
void fill(OrbitTrace& trace, std::size_t steps, ImagesAt images_at) {
  Point previous = trace.probes.front();
  for (std::size_t n = 0; n < steps; ++n) {
    std::vector<Point> images;
    try {
      images = images_at(n);
    } catch (const NumericError& e) {
      throw OrbitError(n, e.what());
    }
    trace.steps.push_back(make_record(trace.surface, std::move(images), trace.probes.front(), previous, n));
    previous = trace.steps.back().images.front();
  }
}

}  // namespace

OrbitTrace left_orbit(const MapSequence& seq, std::span<const Point> probes, std::size_t steps,
                      OrbitOptions options) {
  check_inputs(seq.surface(), probes, steps);
  OrbitTrace trace = start_trace(Side::Left, seq.surface(), probes, steps);
  std::vector<Point> current(probes.begin(), probes.end());
  fill(trace, steps, [&](std::size_t n) {
    const HolMap f = fetch(seq, n, options);
    for (Point& w : current) w = eval(f, w);
    return current;
  });
  return trace;
}

OrbitTrace right_orbit(const MapSequence& seq, std::span<const Point> probes, std::size_t steps,
                       RightStrategy strategy, OrbitOptions options) {
  check_inputs(seq.surface(), probes, steps);
  OrbitTrace trace = start_trace(Side::Right, seq.surface(), probes, steps);
  if (strategy == RightStrategy::RunningComposite) {
    HolMap running = HolMap::identity();
    fill(trace, steps, [&](std::size_t n) {
      running = compose(running, fetch(seq, n, options));
      return eval(running, probes);
    });
    return trace;
  }
  std::vector<HolMap> maps;
  fill(trace, steps, [&](std::size_t n) {
    maps.push_back(fetch(seq, n, options));
    std::vector<Point> images(probes.begin(), probes.end());
    for (Point& w : images) {
      for (auto it = maps.rbegin(); it != maps.rend(); ++it) w = eval(*it, w);
    }
    return images;
  });
  return trace;
}

OrbitTrace renormalized_left(const MapSequence& seq, const HolMap& F, std::span<const Point> probes,
                             std::size_t steps, OrbitOptions options) {
  if (!is_invertible(F)) throw UsageError("renormalization needs an invertible map");
  check_inputs(seq.surface(), probes, steps);
  OrbitTrace trace = start_trace(Side::Left, seq.surface(), probes, steps);
  std::vector<Point> current(probes.begin(), probes.end());
  fill(trace, steps, [&](std::size_t n) {
    const HolMap f = fetch(seq, n, options);
    for (Point& w : current) w = eval(f, w);
    const HolMap back = power(F, -static_cast<long long>(n + 1));
    return eval(back, current);
  });
  return trace;
}

OrbitTrace renormalized_right(const MapSequence& seq, const HolMap& F, std::span<const Point> probes,
                              std::size_t steps, OrbitOptions options) {
  if (!is_invertible(F)) throw UsageError("renormalization needs an invertible map");
  check_inputs(seq.surface(), probes, steps);
  OrbitTrace trace = start_trace(Side::Right, seq.surface(), probes, steps);
  HolMap running = HolMap::identity();
  fill(trace, steps, [&](std::size_t n) {
    running = compose(running, fetch(seq, n, options));
    const HolMap back = power(F, -static_cast<long long>(n + 1));
    return eval(running, eval(back, probes));
  });
  return trace;
}

std::vector<std::pair<std::size_t, double>> divergence_profile(const OrbitTrace& trace) {
  if (trace.steps.empty()) throw UsageError("divergence profile of an empty trace");
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(trace.steps.size());
  for (std::size_t n = 0; n < trace.steps.size(); ++n) out.emplace_back(n, trace.steps[n].base_distance);
  return out;
}

}  // namespace hypdyn
