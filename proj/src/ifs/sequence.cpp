#include <sstream>

#include "hypdyn/ifs.hpp"

namespace hypdyn {
namespace {

std::string indexed(const char* prefix, std::size_t index, const std::string& what) {
  std::ostringstream msg;
  msg << prefix << ' ' << index << ": " << what;
  return msg.str();
}

}  // namespace

GuardError::GuardError(std::size_t index, const std::string& what)
    : std::runtime_error(indexed("map", index, what)), index_(index) {}

OrbitError::OrbitError(std::size_t step, const std::string& what)
    : std::runtime_error(indexed("step", step, what)), step_(step) {}

MapSequence::MapSequence(SurfaceModel surface, Generator generator, std::optional<HolMap> limit)
    : surface_(surface),
      generator_(std::move(generator)),
      limit_(std::move(limit)),
      cache_(std::make_shared<GuardCache>()) {
  if (!generator_) throw UsageError("map sequence needs a generator");
}

MapSequence MapSequence::constant(SurfaceModel surface, HolMap map) {
  return MapSequence(surface, [map](std::size_t) { return map; }, map);
}

MapSequence MapSequence::from_list(SurfaceModel surface, std::vector<HolMap> maps, std::optional<HolMap> tail) {
  if (maps.empty()) throw UsageError("map list is empty");
  HolMap last = tail ? *tail : maps.back();
  auto shared = std::make_shared<const std::vector<HolMap>>(std::move(maps));
  return MapSequence(
      surface, [shared, last](std::size_t n) { return n < shared->size() ? (*shared)[n] : last; }, tail);
}

HolMap MapSequence::checked(std::size_t n) const {
  HolMap map = generator_(n);
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    const auto it = cache_->passed.find(n);
    if (it != cache_->passed.end()) {
      if (!it->second) throw GuardError(n, "not a self-map of the " + surface_.name());
      return map;
    }
  }
  const bool ok = is_self_map(map, surface_, kGuardSamples);
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    cache_->passed[n] = ok;
  }
  if (!ok) throw GuardError(n, "not a self-map of the " + surface_.name());
  return map;
}

}  // namespace hypdyn
