#include "hypdyn/serialize.hpp"

#include <string>

namespace hypdyn {

using nlohmann::json;

void require_only_keys(const json& j, std::initializer_list<const char*> allowed, const char* context) {
  if (!j.is_object()) throw FormatError(std::string(context) + ": expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) throw FormatError(std::string(context) + ": unknown field '" + item.key() + "'");
  }
}

namespace {

const json& field(const json& j, const char* key, const char* context) {
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(context) + ": missing field '" + key + "'");
  return *it;
}

double number(const json& j, const char* context) {
  if (!j.is_number()) throw FormatError(std::string(context) + ": expected a number");
  return j.get<double>();
}

}  // namespace

json point_to_json(Point z) { return json::array({z.real(), z.imag()}); }

Point point_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("complex number must be [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json holmap_to_json(const HolMap& map) {
  return std::visit(
      [&](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        json out;
        out["variant"] = map.variant_name();
        if constexpr (std::is_same_v<T, Mobius>) {
          out["a"] = point_to_json(m.a);
          out["b"] = point_to_json(m.b);
          out["c"] = point_to_json(m.c);
          out["d"] = point_to_json(m.d);
        } else if constexpr (std::is_same_v<T, Blaschke>) {
          out["prefactor"] = point_to_json(m.prefactor);
          json zeros = json::array();
          for (const Point a : m.zeros) zeros.push_back(point_to_json(a));
          out["zeros"] = zeros;
        } else if constexpr (std::is_same_v<T, ExpAffine>) {
          out["c"] = point_to_json(m.c);
        } else if constexpr (std::is_same_v<T, AnnulusAut>) {
          out["theta"] = m.theta;
          out["sign"] = m.sign;
          out["inner_radius"] = m.inner_radius;
        } else if constexpr (std::is_same_v<T, Conjugate>) {
          out["outer"] = holmap_to_json(*m.outer);
          out["inner"] = holmap_to_json(*m.inner);
        } else {
          json maps = json::array();
          for (const auto& part : m.maps) maps.push_back(holmap_to_json(part));
          out["maps"] = maps;
        }
        return out;
      },
      map.node());
}

HolMap holmap_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("map must be a JSON object");
  const json& tag = field(j, "variant", "map");
  if (!tag.is_string()) throw FormatError("map: 'variant' must be a string");
  const std::string variant = tag.get<std::string>();

  if (variant == "mobius") {
    require_only_keys(j, {"variant", "a", "b", "c", "d"}, "mobius");
    return HolMap::mobius(point_from_json(field(j, "a", "mobius")), point_from_json(field(j, "b", "mobius")),
                          point_from_json(field(j, "c", "mobius")), point_from_json(field(j, "d", "mobius")));
  }
  if (variant == "blaschke") {
    require_only_keys(j, {"variant", "prefactor", "zeros"}, "blaschke");
    const json& zeros = field(j, "zeros", "blaschke");
    if (!zeros.is_array()) throw FormatError("blaschke: 'zeros' must be an array");
    std::vector<Point> points;
    for (const auto& z : zeros) points.push_back(point_from_json(z));
    return HolMap::blaschke(point_from_json(field(j, "prefactor", "blaschke")), std::move(points));
  }
  if (variant == "exp_affine") {
    require_only_keys(j, {"variant", "c"}, "exp_affine");
    return HolMap::exp_affine(point_from_json(field(j, "c", "exp_affine")));
  }
  if (variant == "annulus_aut") {
    require_only_keys(j, {"variant", "theta", "sign", "inner_radius"}, "annulus_aut");
    const json& sign = field(j, "sign", "annulus_aut");
    if (!sign.is_number_integer()) throw FormatError("annulus_aut: 'sign' must be an integer");
    return HolMap::annulus_aut(number(field(j, "theta", "annulus_aut"), "annulus_aut.theta"), sign.get<int>(),
                               number(field(j, "inner_radius", "annulus_aut"), "annulus_aut.inner_radius"));
  }
  if (variant == "conjugate") {
    require_only_keys(j, {"variant", "outer", "inner"}, "conjugate");
    return HolMap::conjugate(holmap_from_json(field(j, "outer", "conjugate")),
                             holmap_from_json(field(j, "inner", "conjugate")));
  }
  if (variant == "composite") {
    require_only_keys(j, {"variant", "maps"}, "composite");
    const json& maps = field(j, "maps", "composite");
    if (!maps.is_array()) throw FormatError("composite: 'maps' must be an array");
    std::vector<HolMap> parts;
    for (const auto& m : maps) parts.push_back(holmap_from_json(m));
    return HolMap::composite(std::move(parts));
  }
  throw FormatError("unknown map variant '" + variant + "'");
}

}  // namespace hypdyn
