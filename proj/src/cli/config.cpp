#include <cstdint>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "hypdyn/cli.hpp"

namespace hypdyn::cli {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const char* context) {
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(context) + ": missing field '" + key + "'");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw FormatError(std::string(what) + ": expected a number, got " + j.dump());
  return j.get<double>();
}

std::string text(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + ": expected a string, got " + j.dump());
  return j.get<std::string>();
}

DetectorTolerances tolerances_from_json(const json& j) {
  require_only_keys(j, {"tol_diam", "tol_step", "tol_gap", "tol_boundary", "embedded"}, "tolerances");
  DetectorTolerances tol;
  if (j.contains("tol_diam")) tol.tol_diam = number(j["tol_diam"], "tol_diam");
  if (j.contains("tol_step")) tol.tol_step = number(j["tol_step"], "tol_step");
  if (j.contains("tol_gap")) tol.tol_gap = number(j["tol_gap"], "tol_gap");
  if (j.contains("tol_boundary")) tol.tol_boundary = number(j["tol_boundary"], "tol_boundary");
  if (j.contains("embedded")) {
    if (!j["embedded"].is_boolean()) throw FormatError("embedded: expected true or false");
    tol.embedded = j["embedded"].get<bool>();
  }
  for (const double t : {tol.tol_diam, tol.tol_step, tol.tol_gap, tol.tol_boundary}) {
    if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("tolerances must be positive and finite");
  }
  return tol;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  require_only_keys(j, {"version", "surface", "side", "sequence", "probes", "steps", "tolerances", "output"}, "config");
  const json& version = field(j, "version", "config");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    throw FormatError("config: unsupported version " + version.dump() + " (expected 1)");
  }

  ExperimentConfig config;
  const json& surface = field(j, "surface", "config");
  require_only_keys(surface, {"kind", "inner_radius"}, "surface");
  const std::string kind = text(field(surface, "kind", "surface"), "surface kind");
  const double r = surface.contains("inner_radius") ? number(surface["inner_radius"], "inner_radius") : 0.0;
  if (kind != "annulus" && surface.contains("inner_radius")) {
    throw FormatError("surface: inner_radius only applies to the annulus");
  }
  config.surface = SurfaceModel::from_name(kind, r);

  const std::string side = j.contains("side") ? text(j["side"], "side") : "left";
  if (side != "left" && side != "right") throw FormatError("side must be \"left\" or \"right\", got " + side);
  config.side = side == "left" ? Side::Left : Side::Right;

  const json& seq = field(j, "sequence", "config");
  require_only_keys(seq, {"family", "params"}, "sequence");
  config.sequence.family = text(field(seq, "family", "sequence"), "family");
  config.sequence.params = seq.contains("params") ? seq["params"] : json::object();
  if (!config.sequence.params.is_object()) throw FormatError("sequence params must be an object");
  build_sequence(config.surface, config.sequence);  // validates the parameters

  const json& probes = field(j, "probes", "config");
  if (!probes.is_array() || probes.empty()) throw FormatError("probes must be a non-empty array");
  for (const json& p : probes) {
    const Point z = point_from_json(p);
    config.surface.require(z, "probe");
    config.probes.push_back(z);
  }

  const json& steps = field(j, "steps", "config");
  if (!steps.is_number_integer() || steps.get<std::int64_t>() <= 0) {
    throw FormatError("steps must be a positive integer");
  }
  config.steps = steps.get<std::size_t>();

  if (j.contains("tolerances")) config.tolerances = tolerances_from_json(j["tolerances"]);
  if (j.contains("output")) {
    const json& out = j["output"];
    require_only_keys(out, {"csv", "svg"}, "output");
    if (out.contains("csv")) config.output.csv = text(out["csv"], "output csv");
    if (out.contains("svg")) config.output.svg = text(out["svg"], "output svg");
  }
  return config;
}

json config_to_json(const ExperimentConfig& config) {
  json j;
  j["version"] = 1;
  j["surface"] = {{"kind", config.surface.name()}};
  if (config.surface.kind() == SurfaceKind::Annulus) j["surface"]["inner_radius"] = config.surface.inner_radius();
  j["side"] = config.side == Side::Left ? "left" : "right";
  j["sequence"] = {{"family", config.sequence.family}, {"params", config.sequence.params}};
  json probes = json::array();
  for (const Point z : config.probes) probes.push_back(point_to_json(z));
  j["probes"] = probes;
  j["steps"] = config.steps;
  const DetectorTolerances& t = config.tolerances;
  j["tolerances"] = {{"tol_diam", t.tol_diam},
                     {"tol_step", t.tol_step},
                     {"tol_gap", t.tol_gap},
                     {"tol_boundary", t.tol_boundary},
                     {"embedded", t.embedded}};
  j["output"] = {{"csv", config.output.csv}, {"svg", config.output.svg}};
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
  return config_from_json(j);
}

Point parse_point(const std::string& raw) {
  std::string s;
  for (const char c : raw) {
    if (c != ' ') s.push_back(c);
  }
  auto fail = [&]() -> Point { throw FormatError("malformed point '" + raw + "'"); };
  if (s.empty()) return fail();
  if (s.front() == '[') {
    try {
      return point_from_json(json::parse(s));
    } catch (const json::exception&) {
      return fail();
    }
  }

  // Split into at most two signed terms; a term ending in 'i' is imaginary.
  auto parse_term = [&](const std::string& term, Point& acc) {
    if (term.empty()) return false;
    const bool imaginary = term.back() == 'i';
    std::string body = imaginary ? term.substr(0, term.size() - 1) : term;
    double value = 0.0;
    if (body.empty() || body == "+" || body == "-") {
      if (!imaginary) return false;
      value = body == "-" ? -1.0 : 1.0;
    } else {
      std::size_t used = 0;
      try {
        value = std::stod(body, &used);
      } catch (const std::exception&) {
        return false;
      }
      if (used != body.size()) return false;
    }
    acc += imaginary ? Point(0.0, value) : Point(value, 0.0);
    return true;
  };

  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const bool sign = s[k] == '+' || s[k] == '-';
    const bool exponent = s[k - 1] == 'e' || s[k - 1] == 'E';
    if (sign && !exponent) {
      if (split != std::string::npos) return fail();
      split = k;
    }
  }
  Point z = 0.0;
  if (split == std::string::npos) {
    if (!parse_term(s, z)) return fail();
    return z;
  }
  const std::string first = s.substr(0, split);
  const std::string second = s.substr(split);
  if (first.back() == 'i' || second.back() != 'i') return fail();
  if (!parse_term(first, z) || !parse_term(second, z)) return fail();
  return z;
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::filesystem::path tmp = target;
  // Unique per process and thread, so concurrent writers never share a temp file.
  tmp += ".tmp." + std::to_string(::getpid()) + "." +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::ios_base::failure("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace hypdyn::cli
