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

#include "bwecho/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "bwecho/propagator.hpp"
#include "bwecho/trace.hpp"
#include "bwecho/version.hpp"

namespace bwecho {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// --- small formatting helpers ----------------------------------------------

// Shortest representation that parses back to the same double.
std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw NumericFailure("float formatting failed");
  return std::string(buffer, ptr);
}

std::string kind_name(LatticeKind kind) {
  return kind == LatticeKind::OneD ? "1d" : "2d";
}

std::string type_name(InputType type) {
  switch (type) {
    case InputType::Single: return "single";
    case InputType::Fock: return "fock";
    case InputType::Noon: return "noon";
    case InputType::W: return "w";
  }
  throw ConfigError("unknown input type");
}

std::string sweep_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::None: return "none";
    case SweepKind::Delta: return "delta";
    case SweepKind::NoonPhase: return "noon_phase";
    case SweepKind::NoonPhotons: return "noon_photons";
  }
  throw ConfigError("unknown sweep kind");
}

std::string format_name(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

// --- strict JSON access -----------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end())
      fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

const json* maybe(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

double get_num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    fail(path, "integer out of range");
  return static_cast<int>(v);
}

std::uint64_t get_uint(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail(path, "expected a non-negative integer");
}

std::string get_str(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

// --- overlays ---------------------------------------------------------------

void overlay_disorder(const json& j, DisorderConfig& disorder) {
  require_object(j, "lattice.disorder");
  check_keys(j, "lattice.disorder", {"sigma_max", "ensemble", "seed"});
  if (const json* v = maybe(j, "sigma_max"))
    disorder.sigma_max = get_num(*v, "lattice.disorder.sigma_max");
  if (const json* v = maybe(j, "ensemble"))
    disorder.ensemble = get_int(*v, "lattice.disorder.ensemble");
  if (const json* v = maybe(j, "seed"))
    disorder.seed = get_uint(*v, "lattice.disorder.seed");
}

void overlay_lattice(const json& j, LatticeConfig& lattice) {
  require_object(j, "lattice");
  check_keys(j, "lattice",
             {"kind", "n", "m", "kappa", "delta_over_kappa", "disorder"});
  if (const json* v = maybe(j, "kind")) {
    const std::string kind = get_str(*v, "lattice.kind");
    if (kind == "1d")
      lattice.kind = LatticeKind::OneD;
    else if (kind == "2d")
      lattice.kind = LatticeKind::TwoD;
    else
      fail("lattice.kind", "expected \"1d\" or \"2d\"");
  }
  if (const json* v = maybe(j, "n")) lattice.n = get_int(*v, "lattice.n");
  if (const json* v = maybe(j, "m")) lattice.m = get_int(*v, "lattice.m");
  if (const json* v = maybe(j, "kappa"))
    lattice.kappa = get_num(*v, "lattice.kappa");
  if (const json* v = maybe(j, "delta_over_kappa"))
    lattice.delta_over_kappa = get_num(*v, "lattice.delta_over_kappa");
  if (const json* v = maybe(j, "disorder"))
    overlay_disorder(*v, lattice.disorder);
}

void overlay_protocol(const json& j, ProtocolConfig& protocol) {
  require_object(j, "protocol");
  check_keys(j, "protocol", {"segment_length", "num_samples"});
  if (const json* v = maybe(j, "segment_length"))
    protocol.segment_length = get_num(*v, "protocol.segment_length");
  if (const json* v = maybe(j, "num_samples"))
    protocol.num_samples = get_int(*v, "protocol.num_samples");
}

void overlay_input(const json& j, InputDescriptor& input) {
  require_object(j, "input");
  check_keys(j, "input", {"type", "label_base", "site", "amplitudes", "photons",
                          "site1", "site2", "phase", "sites"});
  if (const json* v = maybe(j, "type")) {
    const std::string type = get_str(*v, "input.type");
    if (type == "single")
      input.type = InputType::Single;
    else if (type == "fock")
      input.type = InputType::Fock;
    else if (type == "noon")
      input.type = InputType::Noon;
    else if (type == "w")
      input.type = InputType::W;
    else
      fail("input.type", "expected \"single\", \"fock\", \"noon\" or \"w\"");
  }
  if (const json* v = maybe(j, "label_base"))
    input.label_base = get_int(*v, "input.label_base");
  if (const json* v = maybe(j, "site")) input.site = get_int(*v, "input.site");
  if (const json* v = maybe(j, "amplitudes")) {
    if (!v->is_array()) fail("input.amplitudes", "expected an array");
    input.amplitudes.clear();
    for (std::size_t i = 0; i < v->size(); ++i)
      input.amplitudes.push_back(
          get_num((*v)[i], "input.amplitudes[" + std::to_string(i) + "]"));
  }
  if (const json* v = maybe(j, "photons"))
    input.photons = get_int(*v, "input.photons");
  if (const json* v = maybe(j, "site1")) input.site1 = get_int(*v, "input.site1");
  if (const json* v = maybe(j, "site2")) input.site2 = get_int(*v, "input.site2");
  if (const json* v = maybe(j, "phase")) input.phase = get_num(*v, "input.phase");
  if (const json* v = maybe(j, "sites")) {
    if (!v->is_array()) fail("input.sites", "expected an array");
    input.sites_1d.clear();
    input.sites_2d.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& entry = (*v)[i];
      const std::string path = "input.sites[" + std::to_string(i) + "]";
      if (entry.is_number_integer()) {
        input.sites_1d.push_back(get_int(entry, path));
      } else if (entry.is_array() && entry.size() == 2) {
        input.sites_2d.emplace_back(get_int(entry[0], path + "[0]"),
                                    get_int(entry[1], path + "[1]"));
      } else {
        fail(path, "expected a site label or a [row, col] pair");
      }
    }
    if (!input.sites_1d.empty() && !input.sites_2d.empty())
      fail("input.sites", "mixes flat labels and [row, col] pairs");
  }
}

void overlay_sweep(const json& j, SweepConfig& sweep) {
  require_object(j, "sweep");
  check_keys(j, "sweep",
             {"kind", "delta_grid", "phi_samples", "noon_photons", "max_photons"});
  if (const json* v = maybe(j, "kind")) {
    const std::string kind = get_str(*v, "sweep.kind");
    if (kind == "none")
      sweep.kind = SweepKind::None;
    else if (kind == "delta")
      sweep.kind = SweepKind::Delta;
    else if (kind == "noon_phase")
      sweep.kind = SweepKind::NoonPhase;
    else if (kind == "noon_photons")
      sweep.kind = SweepKind::NoonPhotons;
    else
      fail("sweep.kind",
           "expected \"none\", \"delta\", \"noon_phase\" or \"noon_photons\"");
  }
  if (const json* v = maybe(j, "delta_grid")) {
    if (!v->is_array()) fail("sweep.delta_grid", "expected an array");
    sweep.delta_grid.clear();
    for (std::size_t i = 0; i < v->size(); ++i)
      sweep.delta_grid.push_back(
          get_num((*v)[i], "sweep.delta_grid[" + std::to_string(i) + "]"));
  }
  if (const json* v = maybe(j, "phi_samples"))
    sweep.phi_samples = get_int(*v, "sweep.phi_samples");
  if (const json* v = maybe(j, "noon_photons")) {
    if (!v->is_array()) fail("sweep.noon_photons", "expected an array");
    sweep.noon_photons.clear();
    for (std::size_t i = 0; i < v->size(); ++i)
      sweep.noon_photons.push_back(
          get_int((*v)[i], "sweep.noon_photons[" + std::to_string(i) + "]"));
  }
  if (const json* v = maybe(j, "max_photons"))
    sweep.max_photons = get_int(*v, "sweep.max_photons");
}

void overlay_output(const json& j, OutputConfig& output) {
  require_object(j, "output");
  check_keys(j, "output", {"dir", "format"});
  if (const json* v = maybe(j, "dir")) output.dir = get_str(*v, "output.dir");
  if (const json* v = maybe(j, "format")) {
    const std::string format = get_str(*v, "output.format");
    if (format == "csv")
      output.format = OutputFormat::Csv;
    else if (format == "json")
      output.format = OutputFormat::Json;
    else
      fail("output.format", "expected \"csv\" or \"json\"");
  }
}

ScenarioConfig overlay(const json& j, const std::string& scenario) {
  ScenarioConfig config = default_config(scenario);
  check_keys(j, "",
             {"scenario", "lattice", "protocol", "input", "sweep", "output"});
  if (const json* v = maybe(j, "lattice")) overlay_lattice(*v, config.lattice);
  if (const json* v = maybe(j, "protocol"))
    overlay_protocol(*v, config.protocol);
  if (const json* v = maybe(j, "input")) overlay_input(*v, config.input);
  if (const json* v = maybe(j, "sweep")) overlay_sweep(*v, config.sweep);
  if (const json* v = maybe(j, "output")) overlay_output(*v, config.output);
  return config;
}

json parse_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// --- canonical config echo --------------------------------------------------

json config_to_json(const ScenarioConfig& config) {
  json j;
  j["scenario"] = config.scenario;
  j["lattice"] = {
      {"kind", kind_name(config.lattice.kind)},
      {"n", config.lattice.n},
      {"m", config.lattice.m},
      {"kappa", config.lattice.kappa},
      {"delta_over_kappa", config.lattice.delta_over_kappa},
      {"disorder",
       {{"sigma_max", config.lattice.disorder.sigma_max},
        {"ensemble", config.lattice.disorder.ensemble},
        {"seed", config.lattice.disorder.seed}}},
  };
  j["protocol"] = {{"segment_length", config.protocol.segment_length},
                   {"num_samples", config.protocol.num_samples}};
  json input = {{"type", type_name(config.input.type)},
                {"label_base", config.input.label_base}};
  switch (config.input.type) {
    case InputType::Single:
      if (config.input.amplitudes.empty())
        input["site"] = config.input.site;
      else
        input["amplitudes"] = config.input.amplitudes;
      break;
    case InputType::Fock:
      input["site"] = config.input.site;
      input["photons"] = config.input.photons;
      break;
    case InputType::Noon:
      input["site1"] = config.input.site1;
      input["site2"] = config.input.site2;
      input["photons"] = config.input.photons;
      input["phase"] = config.input.phase;
      break;
    case InputType::W: {
      json sites = json::array();
      for (int s : config.input.sites_1d) sites.push_back(s);
      for (const auto& [r, c] : config.input.sites_2d)
        sites.push_back(json::array({r, c}));
      input["sites"] = sites;
      break;
    }
  }
  j["input"] = input;
  json sweep = {{"kind", sweep_name(config.sweep.kind)}};
  switch (config.sweep.kind) {
    case SweepKind::None:
      break;
    case SweepKind::Delta:
      sweep["delta_grid"] = config.sweep.delta_grid;
      break;
    case SweepKind::NoonPhase:
      sweep["phi_samples"] = config.sweep.phi_samples;
      sweep["noon_photons"] = config.sweep.noon_photons;
      break;
    case SweepKind::NoonPhotons:
      sweep["max_photons"] = config.sweep.max_photons;
      break;
  }
  j["sweep"] = sweep;
  // Output location and format are deliberately not echoed: the written
  // bytes then depend only on the computation, not on where it landed.
  return j;
}

// --- execution helpers ------------------------------------------------------

LatticeSpec resolve_lattice_at_delta(const ScenarioConfig& config, double delta,
                                     std::uint64_t realization_index) {
  const LatticeConfig& lattice = config.lattice;
  const bool chain = lattice.kind == LatticeKind::OneD;
  const int edges = chain
                        ? lattice.n - 1
                        : lattice.m * (lattice.n - 1) + (lattice.m - 1) * lattice.n;
  std::vector<double> couplings;
  if (lattice.disorder.sigma_max > 0.0) {
    DisorderSpec disorder;
    disorder.sigma_max = lattice.disorder.sigma_max;
    disorder.seed = lattice.disorder.seed;
    disorder.realization_index = realization_index;
    couplings = sample_disordered_couplings(1.0, edges, disorder);
  } else {
    couplings.assign(static_cast<std::size_t>(edges), 1.0);
  }
  return chain ? LatticeSpec::chain(std::move(couplings), delta)
               : LatticeSpec::grid(lattice.m, lattice.n, std::move(couplings),
                                   delta);
}

double echo_fidelity_at(const ScenarioConfig& config, double delta,
                        std::uint64_t realization_index,
                        const InputState& input) {
  EchoProtocol protocol;
  protocol.spec = resolve_lattice_at_delta(config, delta, realization_index);
  protocol.segment_length = config.protocol.segment_length;
  protocol.reversal = ReversalMode::SublatticeExchange;
  return fidelity(echo_unitary(protocol), input);
}

// Map realizations over a small worker pool. Slot-indexed writes plus
// per-realization RNG streams keep the result independent of scheduling.
std::vector<double> ensemble_fidelities(const ScenarioConfig& config,
                                        double delta, const InputState& input,
                                        int threads) {
  const int count = config.lattice.disorder.ensemble;
  std::vector<double> fidelities(static_cast<std::size_t>(count), 0.0);
  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, count);

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&]() {
    try {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        fidelities[static_cast<std::size_t>(i)] = echo_fidelity_at(
            config, delta, static_cast<std::uint64_t>(i), input);
    } catch (...) {
      const std::scoped_lock lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& thread : pool) thread.join();
  if (error) std::rethrow_exception(error);
  return fidelities;
}

void append_ensemble_outputs(const ScenarioConfig& config, double delta,
                             const std::vector<double>& fidelities,
                             const std::string& suffix, RunResult& result) {
  Table table;
  table.name = "ensemble_delta_" + suffix;
  table.columns = {"realization", "fidelity"};
  for (std::size_t i = 0; i < fidelities.size(); ++i)
    table.rows.push_back({static_cast<double>(i), fidelities[i]});
  result.tables.push_back(std::move(table));

  const double mean =
      std::accumulate(fidelities.begin(), fidelities.end(), 0.0) /
      static_cast<double>(fidelities.size());
  const auto [lo, hi] =
      std::minmax_element(fidelities.begin(), fidelities.end());
  result.scalars["mean_delta_" + suffix] = mean;
  result.scalars["min_delta_" + suffix] = *lo;
  result.scalars["max_delta_" + suffix] = *hi;
  // Clean-lattice reference for judging the disorder-induced spread.
  ScenarioConfig ordered = config;
  ordered.lattice.disorder.sigma_max = 0.0;
  result.scalars["ordered_delta_" + suffix] =
      echo_fidelity_at(ordered, delta, 0, resolve_input(ordered));
}

void run_trace(const ScenarioConfig& config, RunResult& result) {
  EchoProtocol protocol;
  protocol.spec =
      resolve_lattice_at_delta(config, config.lattice.delta_over_kappa, 0);
  protocol.segment_length = config.protocol.segment_length;
  protocol.reversal = ReversalMode::SublatticeExchange;
  const InputState input = resolve_input(config);
  const EvolutionTrace trace =
      trace_evolution(protocol, input, config.protocol.num_samples);

  Table curve;
  curve.name = "fidelity_curve";
  curve.columns = {"z", "fidelity"};
  for (std::size_t i = 0; i < trace.z_grid.size(); ++i)
    curve.rows.push_back({trace.z_grid[i], trace.fidelity[i]});
  result.tables.push_back(std::move(curve));

  Table map;
  map.name = "intensity_map";
  map.columns = {"z", "site", "intensity"};
  const int dim = static_cast<int>(trace.intensities.cols());
  for (std::size_t i = 0; i < trace.z_grid.size(); ++i)
    for (int s = 0; s < dim; ++s)
      map.rows.push_back({trace.z_grid[i], static_cast<double>(s),
                          trace.intensities(static_cast<Eigen::Index>(i), s)});
  result.tables.push_back(std::move(map));

  result.scalars["fidelity_final"] = trace.fidelity.back();
}

void run_delta_sweep(const ScenarioConfig& config, const InputState& input,
                     int threads, RunResult& result) {
  Table sweep;
  sweep.name = "delta_sweep";
  sweep.columns = {"delta_over_kappa", "fidelity"};
  for (double delta : config.sweep.delta_grid) {
    if (config.lattice.disorder.ensemble > 1 &&
        config.lattice.disorder.sigma_max > 0.0) {
      const std::vector<double> fidelities =
          ensemble_fidelities(config, delta, input, threads);
      const std::string suffix = format_double(delta);
      append_ensemble_outputs(config, delta, fidelities, suffix, result);
      sweep.rows.push_back({delta, result.scalars["mean_delta_" + suffix]});
    } else {
      sweep.rows.push_back({delta, echo_fidelity_at(config, delta, 0, input)});
    }
  }
  result.tables.push_back(std::move(sweep));
}

void run_noon_phase_sweep(const ScenarioConfig& config, int threads,
                          RunResult& result) {
  (void)threads;
  EchoProtocol protocol;
  protocol.spec =
      resolve_lattice_at_delta(config, config.lattice.delta_over_kappa, 0);
  protocol.segment_length = config.protocol.segment_length;
  const Unitary u = echo_unitary(protocol);

  const NoonState base = std::get<NoonState>(resolve_input(config));
  for (int photons : config.sweep.noon_photons) {
    Table table;
    table.name = "phi_sweep_n0_" + std::to_string(photons);
    table.columns = {"phi", "fidelity"};
    for (int i = 0; i < config.sweep.phi_samples; ++i) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) /
                         static_cast<double>(config.sweep.phi_samples - 1);
      NoonState state = base;
      state.photons = photons;
      state.phase = phi;
      table.rows.push_back({phi, fidelity_noon(u, state)});
    }
    result.tables.push_back(std::move(table));
  }
}

void run_noon_photon_sweep(const ScenarioConfig& config, RunResult& result) {
  EchoProtocol protocol;
  protocol.spec =
      resolve_lattice_at_delta(config, config.lattice.delta_over_kappa, 0);
  protocol.segment_length = config.protocol.segment_length;
  const Unitary u = echo_unitary(protocol);

  const NoonState base = std::get<NoonState>(resolve_input(config));
  Table table;
  table.name = "n0_sweep";
  table.columns = {"n0", "fidelity"};
  for (int photons = 1; photons <= config.sweep.max_photons; ++photons) {
    NoonState state = base;
    state.photons = photons;
    table.rows.push_back(
        {static_cast<double>(photons), fidelity_noon(u, state)});
  }
  result.tables.push_back(std::move(table));
}

// --- output writing ---------------------------------------------------------

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("write failed for " + path.string());
}

std::string table_to_csv(const Table& table) {
  std::string text;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) text += ',';
    text += table.columns[c];
  }
  text += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) text += ',';
      text += format_double(row[c]);
    }
    text += '\n';
  }
  return text;
}

json tables_to_json(const std::vector<Table>& tables) {
  json out = json::array();
  for (const Table& table : tables) {
    json rows = json::array();
    for (const auto& row : table.rows) rows.push_back(row);
    out.push_back({{"name", table.name},
                   {"columns", table.columns},
                   {"rows", rows}});
  }
  return out;
}

}  // namespace

// --- public API -------------------------------------------------------------

std::vector<std::string> scenario_names() {
  return {"fig1", "fig2a", "fig2b", "fig3a", "fig3b", "fig4", "custom"};
}

ScenarioConfig default_config(const std::string& scenario) {
  ScenarioConfig config;
  config.scenario = scenario;
  if (scenario == "custom") return config;

  if (scenario == "fig1") {
    config.input.type = InputType::Single;
    config.input.site = 3;
    return config;
  }
  if (scenario == "fig2a" || scenario == "fig2b") {
    config.input.type = InputType::Single;
    config.input.site = 3;
    // One period longer than fig1: sampling the echo at a detuning-phase
    // node keeps the delta dependence monotone instead of aliased.
    config.protocol.segment_length = 26.0;
    config.sweep.kind = SweepKind::Delta;
    if (scenario == "fig2a") {
      config.sweep.delta_grid = {2.0, 4.0, 6.0, 8.0, 10.0};
    } else {
      config.sweep.delta_grid = {5.0, 10.0};
      config.lattice.disorder.sigma_max = 0.2;
      config.lattice.disorder.ensemble = 100;
    }
    return config;
  }
  if (scenario == "fig3a" || scenario == "fig3b") {
    config.input.type = InputType::Noon;
    config.input.site1 = 1;
    config.input.site2 = 2;
    config.input.photons = 1;
    config.input.phase = 0.0;
    if (scenario == "fig3a") {
      config.sweep.kind = SweepKind::NoonPhase;
      config.sweep.phi_samples = 101;
      config.sweep.noon_photons = {1, 2};
    } else {
      config.sweep.kind = SweepKind::NoonPhotons;
      config.sweep.max_photons = 8;
    }
    return config;
  }
  if (scenario == "fig4") {
    config.lattice.kind = LatticeKind::TwoD;
    config.lattice.m = 7;
    config.lattice.n = 10;
    config.lattice.delta_over_kappa = 10.0;
    config.protocol.segment_length = 10.0;
    config.input.type = InputType::W;
    // Glyph spelling out "E" near the right edge of the 7 x 10 grid.
    config.input.sites_2d = {{0, 8}, {0, 9}, {1, 8}, {2, 8},
                             {2, 9}, {3, 8}, {4, 8}, {4, 9}};
    return config;
  }
  throw ConfigError("unknown scenario: " + scenario);
}

ScenarioConfig parse_config(const std::string& json_text) {
  const json j = parse_json_text(json_text);
  std::string scenario = "custom";
  if (const json* v = maybe(j, "scenario")) scenario = get_str(*v, "scenario");
  return overlay(j, scenario);
}

ScenarioConfig parse_config(const std::string& json_text,
                            const std::string& scenario) {
  const json j = parse_json_text(json_text);
  if (const json* v = maybe(j, "scenario")) {
    const std::string named = get_str(*v, "scenario");
    if (named != scenario)
      fail("scenario", "config names \"" + named +
                           "\" but the run asked for \"" + scenario + "\"");
  }
  return overlay(j, scenario);
}

ScenarioConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

ScenarioConfig load_config(const std::string& path,
                           const std::string& scenario) {
  return parse_config(read_file(path), scenario);
}

void validate_config(const ScenarioConfig& config) {
  const auto names = scenario_names();
  if (std::find(names.begin(), names.end(), config.scenario) == names.end())
    fail("scenario", "unknown scenario: " + config.scenario);

  const LatticeConfig& lattice = config.lattice;
  if (lattice.n < 1) fail("lattice.n", "must be >= 1");
  if (lattice.m < 1) fail("lattice.m", "must be >= 1");
  if (lattice.kind == LatticeKind::OneD && lattice.m != 1)
    fail("lattice.m", "chains require m == 1");
  if (!std::isfinite(lattice.kappa) || lattice.kappa <= 0.0)
    fail("lattice.kappa", "must be finite and > 0");
  if (!std::isfinite(lattice.delta_over_kappa))
    fail("lattice.delta_over_kappa", "must be finite");
  if (!(lattice.disorder.sigma_max >= 0.0) || lattice.disorder.sigma_max >= 1.0)
    fail("lattice.disorder.sigma_max", "must lie in [0, 1)");
  if (lattice.disorder.ensemble < 1)
    fail("lattice.disorder.ensemble", "must be >= 1");

  if (!std::isfinite(config.protocol.segment_length) ||
      config.protocol.segment_length < 0.0)
    fail("protocol.segment_length", "must be finite and >= 0");
  if (config.protocol.num_samples < 2)
    fail("protocol.num_samples", "must be >= 2");

  if (config.input.label_base != 0 && config.input.label_base != 1)
    fail("input.label_base", "must be 0 or 1");

  const SweepConfig& sweep = config.sweep;
  switch (sweep.kind) {
    case SweepKind::None:
      break;
    case SweepKind::Delta:
      if (sweep.delta_grid.empty()) fail("sweep.delta_grid", "must not be empty");
      for (double d : sweep.delta_grid)
        if (!std::isfinite(d)) fail("sweep.delta_grid", "entries must be finite");
      break;
    case SweepKind::NoonPhase:
      if (config.input.type != InputType::Noon)
        fail("sweep.kind", "noon_phase sweeps need input.type == \"noon\"");
      if (sweep.phi_samples < 2) fail("sweep.phi_samples", "must be >= 2");
      if (sweep.noon_photons.empty())
        fail("sweep.noon_photons", "must not be empty");
      for (int n : sweep.noon_photons)
        if (n < 1) fail("sweep.noon_photons", "entries must be >= 1");
      break;
    case SweepKind::NoonPhotons:
      if (config.input.type != InputType::Noon)
        fail("sweep.kind", "noon_photons sweeps need input.type == \"noon\"");
      if (sweep.max_photons < 1) fail("sweep.max_photons", "must be >= 1");
      break;
  }
  if (config.lattice.disorder.ensemble > 1 &&
      (sweep.kind == SweepKind::NoonPhase ||
       sweep.kind == SweepKind::NoonPhotons))
    fail("lattice.disorder.ensemble", "NOON sweeps support a single realization");

  if (config.output.dir.empty()) fail("output.dir", "must not be empty");

  // The input itself: resolve and run the state-level checks.
  try {
    const LatticeSpec spec =
        resolve_lattice_at_delta(config, config.lattice.delta_over_kappa, 0);
    validate_input_state(resolve_input(config), spec.site_count());
  } catch (const InvalidSpec& e) {
    throw ConfigError(std::string("input: ") + e.what());
  }
}

LatticeSpec resolve_lattice(const ScenarioConfig& config,
                            std::uint64_t realization_index) {
  return resolve_lattice_at_delta(config, config.lattice.delta_over_kappa,
                                  realization_index);
}

InputState resolve_input(const ScenarioConfig& config) {
  const LatticeConfig& lattice = config.lattice;
  const int dim = lattice.kind == LatticeKind::OneD ? lattice.n
                                                    : lattice.m * lattice.n;
  const int base = config.input.label_base;
  const InputDescriptor& in = config.input;
  switch (in.type) {
    case InputType::Single: {
      if (in.amplitudes.empty()) {
        const int site = in.site - base;
        if (site < 0 || site >= dim)
          throw InvalidSpec("launch site " + std::to_string(in.site) +
                            " outside the lattice");
        Eigen::VectorXcd alpha = Eigen::VectorXcd::Zero(dim);
        alpha[site] = 1.0;
        return SingleParticleState{std::move(alpha)};
      }
      Eigen::VectorXcd alpha(static_cast<Eigen::Index>(in.amplitudes.size()));
      for (std::size_t i = 0; i < in.amplitudes.size(); ++i)
        alpha[static_cast<Eigen::Index>(i)] = in.amplitudes[i];
      return SingleParticleState{std::move(alpha)};
    }
    case InputType::Fock:
      return FockState{in.site - base, in.photons};
    case InputType::Noon:
      return NoonState{in.site1 - base, in.site2 - base, in.photons, in.phase};
    case InputType::W: {
      WState state;
      if (lattice.kind == LatticeKind::OneD) {
        if (!in.sites_2d.empty())
          throw InvalidSpec("chains take flat site labels, not [row, col]");
        for (int s : in.sites_1d) state.sites.push_back(s - base);
      } else {
        if (!in.sites_1d.empty())
          throw InvalidSpec("grids take [row, col] site labels");
        LatticeSpec probe = resolve_lattice(config, 0);
        for (const auto& [r, c] : in.sites_2d)
          state.sites.push_back(probe.flat_index(r - base, c - base));
      }
      return state;
    }
  }
  throw InvalidSpec("unknown input type");
}

RunResult run_scenario(const ScenarioConfig& config, int threads) {
  validate_config(config);

  RunResult result;
  result.scenario = config.scenario;
  result.master_seed = config.lattice.disorder.seed;
  result.config_json = config_to_json(config).dump();

  const InputState input = resolve_input(config);
  switch (config.sweep.kind) {
    case SweepKind::None:
      if (config.lattice.disorder.ensemble > 1 &&
          config.lattice.disorder.sigma_max > 0.0) {
        const std::vector<double> fidelities = ensemble_fidelities(
            config, config.lattice.delta_over_kappa, input, threads);
        append_ensemble_outputs(config, config.lattice.delta_over_kappa,
                                fidelities,
                                format_double(config.lattice.delta_over_kappa),
                                result);
      } else {
        run_trace(config, result);
      }
      break;
    case SweepKind::Delta:
      run_delta_sweep(config, input, threads, result);
      break;
    case SweepKind::NoonPhase:
      run_noon_phase_sweep(config, threads, result);
      break;
    case SweepKind::NoonPhotons:
      run_noon_photon_sweep(config, result);
      break;
  }
  return result;
}

std::vector<std::string> write_result(const RunResult& result,
                                      const OutputConfig& output) {
  std::error_code ec;
  fs::create_directories(output.dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory " + output.dir + ": " +
                      ec.message());

  const json config_echo =
      result.config_json.empty() ? json::object()
                                 : json::parse(result.config_json);
  std::vector<std::string> written;

  if (output.format == OutputFormat::Json) {
    json doc = {{"scenario", result.scenario},
                {"version", kVersion},
                {"master_seed", result.master_seed},
                {"scalars", result.scalars},
                {"config", config_echo},
                {"tables", tables_to_json(result.tables)}};
    write_text_file(fs::path(output.dir) / "result.json", doc.dump(2) + "\n");
    written.push_back("result.json");
    return written;
  }

  for (const Table& table : result.tables) {
    const std::string file = table.name + ".csv";
    write_text_file(fs::path(output.dir) / file, table_to_csv(table));
    written.push_back(file);
  }
  json summary = {{"scenario", result.scenario},
                  {"version", kVersion},
                  {"master_seed", result.master_seed},
                  {"scalars", result.scalars},
                  {"config", config_echo},
                  {"files", written}};
  write_text_file(fs::path(output.dir) / "summary.json",
                  summary.dump(2) + "\n");
  written.push_back("summary.json");
  return written;
}

}  // namespace bwecho
