// Copyright 2026 The bwecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "bwecho/errors.hpp"
#include "bwecho/scenario.hpp"
#include "bwecho/version.hpp"

namespace {

// Exit codes: 0 success, 2 configuration problem, 3 numeric failure.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericError = 3;

int do_run(const std::string& scenario, const std::string& config_path,
           std::optional<std::uint64_t> seed, const std::string& out_dir,
           const std::string& format) {
  bwecho::ScenarioConfig config = config_path.empty()
                                      ? bwecho::default_config(scenario)
                                      : bwecho::load_config(config_path, scenario);
  if (seed) config.lattice.disorder.seed = *seed;
  if (!out_dir.empty()) config.output.dir = out_dir;
  if (!format.empty())
    config.output.format = format == "json" ? bwecho::OutputFormat::Json
                                            : bwecho::OutputFormat::Csv;

  const bwecho::RunResult result = bwecho::run_scenario(config);
  const auto files = bwecho::write_result(result, config.output);
  for (const auto& file : files)
    std::cout << "wrote " << config.output.dir << "/" << file << "\n";
  for (const auto& [name, value] : result.scalars)
    std::cout << name << " = " << std::setprecision(15) << value << "\n";
  return kOk;
}

int do_validate(const std::string& config_path) {
  const bwecho::ScenarioConfig config = bwecho::load_config(config_path);
  bwecho::validate_config(config);
  std::cout << "OK: scenario " << config.scenario << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loschmidt echoes of light in binary waveguide lattices"};
  app.set_version_flag("--version", std::string(bwecho::kVersion));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario and write its outputs");
  std::string scenario;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format;
  run->add_option("scenario", scenario, "Scenario name (see list-scenarios)")
      ->required();
  run->add_option("--config", config_path, "JSON config overlaying the preset")
      ->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Master seed for disorder ensembles");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* list =
      app.add_subcommand("list-scenarios", "List the built-in scenarios");

  auto* validate =
      app.add_subcommand("validate", "Check a config file without running it");
  std::string validate_path;
  validate->add_option("--config", validate_path, "JSON config to check")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (list->parsed()) {
      for (const auto& name : bwecho::scenario_names())
        std::cout << name << "\n";
      return kOk;
    }
    if (validate->parsed()) return do_validate(validate_path);
    return do_run(scenario, config_path, seed, out_dir, format);
  } catch (const bwecho::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const bwecho::CapacityExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const bwecho::InvalidSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const bwecho::NumericFailure& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericError;
  }
}
