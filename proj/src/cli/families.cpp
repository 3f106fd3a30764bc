#include "hypdyn/cli.hpp"
#include "hypdyn/families.hpp"
#include "hypdyn/validators.hpp"

namespace hypdyn::cli {

using nlohmann::json;

namespace {

double number_param(const json& params, const char* key) {
  const auto it = params.find(key);
  if (it == params.end()) throw FormatError(std::string("sequence params: missing '") + key + "'");
  if (!it->is_number()) throw FormatError(std::string("sequence params: '") + key + "' must be a number");
  return it->get<double>();
}

}  // namespace

MapSequence build_sequence(const SurfaceModel& surface, const SequenceSpec& spec) {
  const json& p = spec.params;
  const std::string& family = spec.family;

  if (family == "identity") {
    require_only_keys(p, {}, "identity params");
    return MapSequence::constant(surface, HolMap::identity());
  }
  if (family == "constant") {
    require_only_keys(p, {"map"}, "constant params");
    if (!p.contains("map")) throw FormatError("constant params: missing 'map'");
    return MapSequence::constant(surface, holmap_from_json(p["map"]));
  }
  if (family == "half-scaled") {
    require_only_keys(p, {"delta", "thetas"}, "half-scaled params");
    if (surface.kind() != SurfaceKind::Disk) throw UsageError("half-scaled maps act on the disk");
    const double delta = number_param(p, "delta");
    if (!(delta >= 0.0 && delta < 0.5)) throw UsageError("half-scaled needs 0 <= delta < 1/2");
    if (!p.contains("thetas") || !p["thetas"].is_array() || p["thetas"].empty()) {
      throw FormatError("half-scaled params: 'thetas' must be a non-empty array");
    }
    std::vector<double> thetas;
    for (const json& t : p["thetas"]) {
      if (!t.is_number()) throw FormatError("half-scaled params: thetas must be numbers");
      thetas.push_back(t.get<double>());
    }
    return MapSequence(surface,
                       [delta, thetas](std::size_t n) { return families::half_scaled(delta, thetas[n % thetas.size()]); });
  }
  if (family == "exp-translate") {
    require_only_keys(p, {"c", "shift"}, "exp-translate params");
    if (surface.kind() != SurfaceKind::HalfPlane) throw UsageError("exp-translate acts on the half-plane");
    if (!p.contains("c")) throw FormatError("exp-translate params: missing 'c'");
    const HolMap first = HolMap::exp_affine(point_from_json(p["c"]));
    const HolMap shift = families::translation(number_param(p, "shift"));
    return MapSequence(surface, [first, shift](std::size_t n) { return n == 0 ? first : shift; }, shift);
  }
  if (family == "parabolic-oscillation") {
    require_only_keys(p, {"J"}, "parabolic-oscillation params");
    if (surface.kind() != SurfaceKind::HalfPlane) throw UsageError("parabolic-oscillation acts on the half-plane");
    if (!p.contains("J") || !p["J"].is_number_integer()) throw FormatError("parabolic-oscillation params: 'J' must be an integer");
    return oscillating_construction(p["J"].get<int>()).sequence;
  }
  if (family == "maps") {
    require_only_keys(p, {"maps", "tail"}, "maps params");
    if (!p.contains("maps") || !p["maps"].is_array() || p["maps"].empty()) {
      throw FormatError("maps params: 'maps' must be a non-empty array");
    }
    std::vector<HolMap> maps;
    for (const json& m : p["maps"]) maps.push_back(holmap_from_json(m));
    std::optional<HolMap> tail;
    if (p.contains("tail")) tail = holmap_from_json(p["tail"]);
    return MapSequence::from_list(surface, std::move(maps), std::move(tail));
  }
  throw FormatError("unknown sequence family '" + family + "'");
}

}  // namespace hypdyn::cli
