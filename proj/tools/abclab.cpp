// abclab: run one named scenario from a TOML file and write CSV + summary.json.
//
//   abclab <config.toml> [--scenario NAME] [--seed N] [--trials N] [--out DIR]
//                        [--record-wall-time]
//
// Exit status: 0 all checks pass, 2 a physics check failed, 1 usage or runtime error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "abclab/error.hpp"
#include "abclab/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Scenario runner for charge-fluxon phase calculations"};

  std::string config_path;
  std::string scenario;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string out_dir;
  bool record_wall_time = false;

  app.add_option("config", config_path, "TOML configuration file")->required();
  app.add_option("--scenario", scenario,
                 "duality, scatter, shield-classical, config1, config2, config3 or fringe-scan");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized suites");
  auto* trials_opt = app.add_option("--trials", trials, "trial count for randomized suites")
                         ->check(CLI::PositiveNumber);
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  app.add_flag("--record-wall-time", record_wall_time,
               "include wall time in summary.json (breaks byte-for-byte reproducibility)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    abclab::ConfigOverrides overrides;
    if (!scenario.empty()) {
      overrides.scenario = abclab::scenario_from_name(scenario);
      if (!overrides.scenario) {
        std::cerr << "abclab: unknown scenario '" << scenario << "'\n";
        return 1;
      }
    }
    if (*seed_opt) overrides.seed = seed;
    if (*trials_opt) overrides.trials = trials;
    if (*out_opt) overrides.out_dir = out_dir;

    const auto config = abclab::load_config(config_path, overrides);
    const auto summary = abclab::run_scenario(config);
    abclab::write_outputs(summary, config, record_wall_time);

    for (const auto& c : summary.checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << c.value
                << " threshold=" << c.threshold << '\n';
    }
    return summary.passed() ? 0 : 2;
  } catch (const abclab::Error& e) {
    std::cerr << "abclab: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "abclab: " << e.what() << '\n';
    return 1;
  }
}
