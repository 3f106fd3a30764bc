#pragma once

// JSON forms shared by the config files and the reports. Complex numbers
// are two-element arrays [re, im]; maps are objects tagged by "variant".

#include <json.hpp>

#include "hypdyn/holmaps.hpp"

namespace hypdyn {

/// Malformed JSON input (unknown variant, missing or unexpected field).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json point_to_json(Point z);
Point point_from_json(const nlohmann::json& j);

nlohmann::json holmap_to_json(const HolMap& map);
/// Throws FormatError for unknown variants or fields, UsageError for
/// parameter values the map constructors reject.
HolMap holmap_from_json(const nlohmann::json& j);

/// Throws FormatError when `j` has a key outside `allowed`.
void require_only_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const char* context);

}  // namespace hypdyn
