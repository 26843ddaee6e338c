#pragma once

// Scenario driver behind the abclab command line tool: TOML configuration,
// named experiments, CSV tables and a JSON run summary.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace abclab {

enum class Scenario { duality, scatter, shield_classical, config1, config2, config3, fringe_scan };

std::string_view scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(std::string_view name);

struct ScenarioConfig {
  Scenario scenario = Scenario::duality;

  // [physics]
  double charge = 1.0;
  double flux = 1.0;
  double core_radius = 1e-3;
  double loop_radius = 1.0;
  double shield_radius = 1.0;
  double orbit_radius = 2.0;
  double angular_velocity = 0.01;
  double impact_parameter = 1.0;
  double speed = 0.01;
  double charge_mass = 1.0;
  double fluxon_mass = 1.0;
  int flux_quanta = 1;

  // [shield]; absent amplitudes mean random constraint-satisfying states
  std::optional<std::map<int, std::complex<double>>> amplitudes;

  // [scan]
  std::vector<double> flux_grid;

  // [numerics]
  int n_samples = 720;
  double rel_tol = 1e-6;
  double abs_tol = 1e-12;
  int max_depth = 12;
  int shield_nodes = 256;
  int gauss_points = 4;
  double half_length = 10.0;  ///< scatter: start/end distance along the beam
  int n_steps = 2000;

  // [run]
  std::uint64_t seed = 0;
  int trials = 100;
  std::filesystem::path out_dir = ".";
};

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
  std::optional<Scenario> scenario;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::filesystem::path> out_dir;
};

/// Parses and validates a TOML document. Unknown keys and syntax errors raise
/// ParseError with the source position; violated preconditions raise
/// ValidationError naming the key.
ScenarioConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {},
                            std::string_view source_name = "config");
ScenarioConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

struct CheckResult {
  std::string name;
  int criterion;  ///< acceptance criterion this check implements
  bool passed;
  double value;
  double threshold;
};

using CsvCell = std::variant<long long, double, std::string>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

struct RunSummary {
  std::string scenario;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, double>> scalars;
  CsvTable table;
  double wall_time_seconds = 0.0;

  bool passed() const;
};

RunSummary run_scenario(const ScenarioConfig& config);

/// Header row, one line per row, floats with 17 significant digits.
std::string format_csv(const CsvTable& table);
std::string format_summary_json(const RunSummary& summary, const ScenarioConfig& config,
                                bool include_wall_time);

/// Writes <out>/<scenario>.csv and <out>/summary.json.
void write_outputs(const RunSummary& summary, const ScenarioConfig& config,
                   bool include_wall_time);

}  // namespace abclab
