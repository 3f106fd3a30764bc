#pragma once

// Experiment configs and the three subcommands of the hypdyn tool. The
// command functions return process exit codes and never call exit().

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypdyn/ifs.hpp"
#include "hypdyn/serialize.hpp"

namespace hypdyn::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;
inline constexpr int kGuard = 3;
inline constexpr int kIo = 4;
inline constexpr int kScenario = 5;
}  // namespace exit_code

/// A named map-sequence family with its parameters, or an explicit list.
///
///   identity                {}
///   half-scaled             {"delta", "thetas": [...]}      z/2 + delta e^{i theta_{n mod len}}
///   exp-translate           {"c", "shift"}                  f_0 = c + e^{2 pi i w}, then w + shift
///   constant                {"map"}
///   parabolic-oscillation   {"J"}                           the stitched parabolic construction
///   maps                    {"maps": [...], "tail"?}
struct SequenceSpec {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
};

struct OutputSpec {
  std::string csv = "trace.csv";
  std::string svg = "trace.svg";
};

struct ExperimentConfig {
  SurfaceModel surface = SurfaceModel::disk();
  Side side = Side::Left;
  SequenceSpec sequence;
  std::vector<Point> probes;
  std::size_t steps = 0;
  DetectorTolerances tolerances;
  OutputSpec output;
};

/// Throws FormatError for unknown or missing fields and a wrong version,
/// UsageError for invalid values.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

/// Builds the sequence; throws FormatError/UsageError for bad parameters.
MapSequence build_sequence(const SurfaceModel& surface, const SequenceSpec& spec);

/// "0.5", "i", "2i", "-0.3+0.2i", "1e-3-4i", "[0.3,0.2]".
Point parse_point(const std::string& text);

/// Polyline of probe 0 in the plane and of the base-distance profile.
std::string trace_svg(const OrbitTrace& trace);

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& content);

struct GlobalOptions {
  std::uint64_t seed = 7;
  std::string out = ".";
  std::optional<double> tol_diam;
  std::optional<double> tol_step;
  std::optional<double> tol_gap;
  bool plot = false;
};

int cmd_dist(const std::string& surface, double inner_radius, const std::string& z, const std::string& w,
             std::ostream& out, std::ostream& err);
int cmd_orbit(const std::string& config_path, const GlobalOptions& options, std::ostream& out, std::ostream& err);
/// `id` may be "all". Reports go to <out>/<id>.json.
int cmd_validate(const std::string& id, int J, const GlobalOptions& options, std::ostream& out, std::ostream& err);

}  // namespace hypdyn::cli
