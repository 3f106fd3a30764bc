#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypdyn/cli.hpp"

using namespace hypdyn;
using namespace hypdyn::cli;

#ifndef HYPDYN_CONFIG_DIR
#error "HYPDYN_CONFIG_DIR must point at the shipped configs"
#endif

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hypdyn_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("point parsing") {
  CHECK(parse_point("0.5") == Point(0.5, 0.0));
  CHECK(parse_point("i") == Point(0.0, 1.0));
  CHECK(parse_point("2i") == Point(0.0, 2.0));
  CHECK(parse_point("-i") == Point(0.0, -1.0));
  CHECK(parse_point("-0.3+0.2i") == Point(-0.3, 0.2));
  CHECK(parse_point("1e-3-4i") == Point(1e-3, -4.0));
  CHECK(parse_point("[0.3,0.2]") == Point(0.3, 0.2));
  CHECK_THROWS(parse_point("abc"));
  CHECK_THROWS(parse_point("0.3+"));
  CHECK_THROWS(parse_point(""));
}

TEST_CASE("shipped configs round-trip") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(HYPDYN_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    ++seen;
    const ExperimentConfig once = load_config(entry.path().string());
    const nlohmann::json j = config_to_json(once);
    const ExperimentConfig twice = config_from_json(j);
    CHECK(config_to_json(twice) == j);
    CHECK(config_to_json(twice).dump() == j.dump());
  }
  CHECK(seen >= 4);
}

TEST_CASE("config validation") {
  const nlohmann::json good = {
      {"version", 1},
      {"surface", {{"kind", "disk"}}},
      {"sequence", {{"family", "identity"}, {"params", nlohmann::json::object()}}},
      {"probes", {{0.0, 0.0}}},
      {"steps", 4},
  };
  CHECK_NOTHROW(config_from_json(good));

  auto with = [&](const std::string& key, const nlohmann::json& value) {
    nlohmann::json j = good;
    j[key] = value;
    return j;
  };
  CHECK_THROWS_AS(config_from_json(with("version", 2)), FormatError);
  CHECK_THROWS_AS(config_from_json(with("colour", "red")), FormatError);
  CHECK_THROWS(config_from_json(with("probes", {{0.0, 1.5}})));
  CHECK_THROWS(config_from_json(with("steps", 0)));
  CHECK_THROWS_AS(config_from_json(with("sequence", {{"family", "spline"}})), FormatError);
  CHECK_THROWS(config_from_json(with("sequence", {{"family", "half-scaled"}, {"params", {{"delta", 0.6}, {"thetas", {0.0}}}}})));
}

TEST_CASE("dist command") {
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cmd_dist("disk", 0.0, "0", "0.5", out, err) == exit_code::kOk);
  CHECK(out.str() == "0.549306144334055\n");
  out.str("");
  CHECK(cmd_dist("half-plane", 0.0, "i", "2i", out, err) == exit_code::kOk);
  CHECK(out.str() == "0.346573590279973\n");
  out.str("");
  CHECK(cmd_dist("disk", 0.0, "0", "0", out, err) == exit_code::kOk);
  CHECK(out.str() == "0\n");
  CHECK(cmd_dist("disk", 0.0, "0", "1.5", out, err) == exit_code::kUsage);
  CHECK(cmd_dist("disk", 0.0, "zero", "0.5", out, err) == exit_code::kUsage);
  CHECK(cmd_dist("torus", 0.0, "0", "0.5", out, err) == exit_code::kUsage);
}

TEST_CASE("orbit command writes the trace") {
  const auto dir = scratch_dir("orbit");
  GlobalOptions options;
  options.out = dir.string();
  options.plot = true;
  std::ostringstream out;
  std::ostringstream err;
  const std::string config = std::string(HYPDYN_CONFIG_DIR) + "/half_scaled_oscillation.json";
  REQUIRE(cmd_orbit(config, options, out, err) == exit_code::kOk);
  CHECK(out.str().find("verdict: oscillating") != std::string::npos);

  const ExperimentConfig parsed = load_config(config);
  const std::string csv = slurp(dir / parsed.output.csv);
  CHECK(csv.rfind("nu,probe,re,im,diam,step,base_dist\n", 0) == 0);
  const std::string svg = slurp(dir / parsed.output.svg);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<polyline") != std::string::npos);

  // Same inputs, same bytes.
  const auto again = scratch_dir("orbit_again");
  options.out = again.string();
  REQUIRE(cmd_orbit(config, options, out, err) == exit_code::kOk);
  CHECK(slurp(again / parsed.output.csv) == csv);
}

TEST_CASE("orbit command exit codes") {
  const auto dir = scratch_dir("orbit_codes");
  GlobalOptions options;
  options.out = dir.string();
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cmd_orbit((dir / "missing.json").string(), options, out, err) == exit_code::kIo);

  const nlohmann::json bad_map = {
      {"version", 1},
      {"surface", {{"kind", "disk"}}},
      {"sequence",
       {{"family", "maps"},
        {"params",
         {{"maps",
           {{{"variant", "mobius"}, {"a", {0.5, 0.0}}, {"b", {0.0, 0.0}}, {"c", {0.0, 0.0}}, {"d", {1.0, 0.0}}},
            {{"variant", "mobius"}, {"a", {0.5, 0.0}}, {"b", {0.9, 0.0}}, {"c", {0.0, 0.0}}, {"d", {1.0, 0.0}}}}}}}}},
      {"probes", {{0.0, 0.0}}},
      {"steps", 8},
  };
  std::ofstream(dir / "guard.json") << bad_map.dump();
  err.str("");
  CHECK(cmd_orbit((dir / "guard.json").string(), options, out, err) == exit_code::kGuard);
  CHECK(err.str().find("map index 1") != std::string::npos);

  std::ofstream(dir / "broken.json") << "{\"version\": 1,";
  CHECK(cmd_orbit((dir / "broken.json").string(), options, out, err) == exit_code::kUsage);

  // An output path under a regular file cannot be created.
  std::ofstream(dir / "blocker") << "x";
  options.out = (dir / "blocker").string();
  CHECK(cmd_orbit(std::string(HYPDYN_CONFIG_DIR) + "/identity.json", options, out, err) == exit_code::kIo);
}

TEST_CASE("validate command") {
  const auto dir = scratch_dir("validate");
  GlobalOptions options;
  options.out = dir.string();
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cmd_validate("no-such", 4, options, out, err) == exit_code::kUsage);
  CHECK(cmd_validate("oscillating", 9, options, out, err) == exit_code::kUsage);
  out.str("");
  CHECK(cmd_validate("oscillating", 3, options, out, err) == exit_code::kOk);
  CHECK(out.str() == "PASS oscillating\n");
  const auto report = nlohmann::json::parse(slurp(dir / "oscillating.json"));
  CHECK(report.at("pass") == true);
  CHECK(report.at("measured").at("breakpoints").size() == 8);
}
