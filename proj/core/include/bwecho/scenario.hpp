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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bwecho/errors.hpp"
#include "bwecho/lattice.hpp"
#include "bwecho/states.hpp"

namespace bwecho {

// Named experiment presets plus a free-form `custom` mode. All internal
// quantities are dimensionless: couplings are measured in units of kappa
// (so the uniform coupling is 1) and distances in units of 1/kappa.

enum class OutputFormat { Csv, Json };

struct DisorderConfig {
  double sigma_max = 0.0;      // 0 disables disorder
  int ensemble = 1;            // number of realizations
  std::uint64_t seed = 12345;  // master seed, combined with the index
};

struct LatticeConfig {
  LatticeKind kind = LatticeKind::OneD;
  int n = 10;  // chain length, or grid columns
  int m = 1;   // grid rows (ignored for chains)
  double kappa = 1.0;  // physical coupling scale; echoed in outputs only
  double delta_over_kappa = 5.0;
  DisorderConfig disorder;
};

struct ProtocolConfig {
  double segment_length = 25.0;  // kappa * L per segment
  int num_samples = 501;         // points on [0, 2L] for traces
};

enum class InputType { Single, Fock, Noon, W };

// How a config addresses sites. Everything internal is 0-based; label_base
// lets config files use 1-based labels to match conventional figure axes.
struct InputDescriptor {
  InputType type = InputType::Single;
  int label_base = 0;
  // Single: either one launch site, or explicit per-site amplitudes.
  int site = 0;
  std::vector<double> amplitudes;  // optional; empty = single launch site
  // Fock / Noon:
  int photons = 1;
  int site1 = 0;
  int site2 = 1;
  double phase = 0.0;
  // W: flattened site labels (chains) or (row, col) pairs (grids).
  std::vector<int> sites_1d;
  std::vector<std::pair<int, int>> sites_2d;
};

enum class SweepKind { None, Delta, NoonPhase, NoonPhotons };

struct SweepConfig {
  SweepKind kind = SweepKind::None;
  std::vector<double> delta_grid;   // Delta sweep values of delta/kappa
  int phi_samples = 101;            // NoonPhase points on [0, 2 pi]
  std::vector<int> noon_photons;    // NoonPhase curves to draw
  int max_photons = 8;              // NoonPhotons sweeps 1..max_photons
};

struct OutputConfig {
  std::string dir = "out";
  OutputFormat format = OutputFormat::Csv;
};

struct ScenarioConfig {
  std::string scenario = "custom";
  LatticeConfig lattice;
  ProtocolConfig protocol;
  InputDescriptor input;
  SweepConfig sweep;
  OutputConfig output;
};

// One rectangular result table, written as a CSV file (or a JSON object).
struct Table {
  std::string name;                       // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row has columns.size() values
};

struct RunResult {
  std::string scenario;
  std::uint64_t master_seed = 0;
  std::map<std::string, double> scalars;  // headline numbers for summaries
  std::vector<Table> tables;
  std::string config_json;  // canonical echo of the resolved configuration
};

// Built-in presets: fig1, fig2a, fig2b, fig3a, fig3b, fig4, custom.
std::vector<std::string> scenario_names();
ScenarioConfig default_config(const std::string& scenario);

// Parse a JSON config file and overlay it on the scenario's defaults.
// Unknown keys, wrong types, and out-of-range values raise ConfigError with
// the offending field path in the message.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& json_text);

// Same, but anchored to a known scenario: the file may omit "scenario", and
// if it names one it must match `scenario`.
ScenarioConfig load_config(const std::string& path,
                           const std::string& scenario);
ScenarioConfig parse_config(const std::string& json_text,
                            const std::string& scenario);

// Full validation of a resolved config (ranges, site labels vs lattice
// size, sweep/input compatibility). Throws ConfigError.
void validate_config(const ScenarioConfig& config);

// Resolve the lattice spec and input state described by the config.
// `realization_index` picks the disorder realization (couplings are clean
// when sigma_max == 0).
LatticeSpec resolve_lattice(const ScenarioConfig& config,
                            std::uint64_t realization_index);
InputState resolve_input(const ScenarioConfig& config);

// Run the scenario (including any ensemble/sweep loop). Deterministic for a
// fixed config: rerunning produces byte-identical tables. `threads` <= 0
// picks the hardware concurrency; ensembles are distributed over threads
// with per-realization RNG streams, so the thread count never changes
// results.
RunResult run_scenario(const ScenarioConfig& config, int threads = 0);

// Write tables plus a summary file into config.output.dir. Returns the list
// of files written (relative to the directory). Output bytes depend only on
// the result's contents.
std::vector<std::string> write_result(const RunResult& result,
                                      const OutputConfig& output);

}  // namespace bwecho
