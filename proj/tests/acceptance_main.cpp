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
//
// Acceptance gate: every release-blocking property of the simulator, one
// line of output per criterion. Each check states its tolerance inline;
// failures print the measured value so regressions are actionable.

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bwecho/effective_model.hpp"
#include "bwecho/propagator.hpp"
#include "bwecho/scenario.hpp"
#include "bwecho/states.hpp"
#include "bwecho/trace.hpp"
#include "testing_util.hpp"

namespace fs = std::filesystem;
using namespace bwecho;
using bwecho_testing::max_deviation_from_identity;
using bwecho_testing::random_amplitudes;
using bwecho_testing::random_unitary;

namespace {

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << id << ": " << detail << "\n";
  if (!pass) ++failures;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(15);
  out << v;
  return out.str();
}

EchoProtocol chain_protocol(ReversalMode mode) {
  EchoProtocol protocol;
  protocol.spec = LatticeSpec::uniform_chain(10, 1.0, 5.0);
  protocol.segment_length = 25.0;
  protocol.reversal = mode;
  return protocol;
}

EchoProtocol grid_protocol(ReversalMode mode) {
  EchoProtocol protocol;
  protocol.spec = LatticeSpec::uniform_grid(7, 10, 1.0, 10.0);
  protocol.segment_length = 10.0;
  protocol.reversal = mode;
  return protocol;
}

std::vector<InputState> chain_inputs() {
  Eigen::VectorXcd spread(10);
  for (int i = 0; i < 10; ++i)
    spread[i] = std::complex<double>(std::sin(i + 1.0), 0.5 * std::cos(2.0 * i));
  return {
      SingleParticleState{std::move(spread)},
      FockState{3, 3},
      NoonState{1, 2, 2, 0.7},
      WState{{0, 3, 5}},
  };
}

std::vector<InputState> grid_inputs() {
  Eigen::VectorXcd corner = Eigen::VectorXcd::Zero(70);
  corner[8] = 1.0;
  return {
      SingleParticleState{std::move(corner)},
      FockState{28, 2},
      NoonState{8, 49, 2, -0.4},
      WState{{8, 9, 18, 28, 29, 38, 48, 49}},
  };
}

// C1: with the second segment an exact time reversal, every input state
// revives perfectly.
void criterion_full_reversal() {
  double worst = 0.0;
  for (const auto& [protocol, inputs] :
       {std::pair{chain_protocol(ReversalMode::FullReversal), chain_inputs()},
        std::pair{grid_protocol(ReversalMode::FullReversal), grid_inputs()}}) {
    const Unitary echo = echo_unitary(protocol);
    for (const InputState& input : inputs)
      worst = std::max(worst, std::abs(fidelity(echo, input) - 1.0));
  }
  report("C1 full-reversal revival", worst <= 1e-10,
         "max |F - 1| = " + fmt(worst) + " over 8 states (tol 1e-10)");
}

// C2: the propagator stays unitary and the traced mean photon numbers sum
// to the photon total everywhere along the protocol.
void criterion_conservation() {
  double worst_unitarity = 0.0;
  EchoProtocol disordered = chain_protocol(ReversalMode::SublatticeExchange);
  DisorderSpec disorder;
  disorder.sigma_max = 0.2;
  disorder.seed = 42;
  disordered.spec =
      LatticeSpec::chain(sample_disordered_couplings(1.0, 9, disorder), 5.0);
  for (const EchoProtocol& protocol :
       {chain_protocol(ReversalMode::SublatticeExchange),
        grid_protocol(ReversalMode::SublatticeExchange), disordered}) {
    const Unitary u = echo_unitary(protocol);
    worst_unitarity = std::max(
        worst_unitarity,
        max_deviation_from_identity(u.matrix.adjoint() * u.matrix));
  }

  double worst_total = 0.0;
  const EchoProtocol protocol = chain_protocol(ReversalMode::SublatticeExchange);
  for (const InputState& input : chain_inputs()) {
    const EvolutionTrace trace = trace_evolution(protocol, input, 41);
    const double expected = static_cast<double>(total_photons(input));
    for (Eigen::Index i = 0; i < trace.intensities.rows(); ++i)
      worst_total = std::max(
          worst_total, std::abs(trace.intensities.row(i).sum() - expected));
  }

  report("C2 unitarity and photon conservation",
         worst_unitarity <= 1e-10 && worst_total <= 1e-9,
         "max ||U^H U - I|| = " + fmt(worst_unitarity) +
             " (tol 1e-10), max photon-sum error = " + fmt(worst_total) +
             " (tol 1e-9)");
}

// C3: the spectral propagator agrees entrywise with blind RK4 integration.
void criterion_integrator_cross_check() {
  const Hamiltonian chain =
      build_hamiltonian(LatticeSpec::uniform_chain(10, 1.0, 5.0));
  const double chain_err =
      (evolve_rk4_unitary(chain, 25.0, 1e-3).matrix -
       evolve_unitary(chain, 25.0).matrix)
          .cwiseAbs()
          .maxCoeff();
  const Hamiltonian grid =
      build_hamiltonian(LatticeSpec::uniform_grid(7, 10, 1.0, 10.0));
  const double grid_err = (evolve_rk4_unitary(grid, 10.0, 1e-3).matrix -
                           evolve_unitary(grid, 10.0).matrix)
                              .cwiseAbs()
                              .maxCoeff();
  report("C3 spectral vs RK4 propagator",
         chain_err <= 1e-8 && grid_err <= 1e-8,
         "chain err = " + fmt(chain_err) + ", grid err = " + fmt(grid_err) +
             " (step 1e-3, tol 1e-8)");
}

// C4: the closed-form fidelities match the permanent-based Fock expansion
// on random unitaries.
void criterion_closed_forms() {
  std::mt19937_64 gen(20260823);
  double worst = 0.0;
  for (int round = 0; round < 50; ++round) {
    const int dim = 2 + static_cast<int>(gen() % 5);  // 2..6
    const Unitary u{random_unitary(dim, gen)};
    InputState state;
    switch (round % 4) {
      case 0:
        state = SingleParticleState{random_amplitudes(dim, gen)};
        break;
      case 1:
        state = FockState{static_cast<int>(gen() % dim),
                          1 + static_cast<int>(gen() % 3)};
        break;
      case 2: {
        const int site1 = static_cast<int>(gen() % dim);
        int site2 = static_cast<int>(gen() % dim);
        if (site2 == site1) site2 = (site1 + 1) % dim;
        state = NoonState{site1, site2, 1 + static_cast<int>(gen() % 3),
                          0.11 * static_cast<double>(round) - 2.0};
        break;
      }
      default: {
        WState w;
        for (int s = 0; s < dim; ++s)
          if (gen() % 2 == 0) w.sites.push_back(s);
        if (w.sites.empty()) w.sites.push_back(static_cast<int>(gen() % dim));
        state = w;
        break;
      }
    }
    worst = std::max(worst, std::abs(fidelity(u, state) -
                                     fock_space_fidelity_oracle(u, state)));
  }
  report("C4 closed forms vs Fock-space reference", worst <= 1e-9,
         "max |closed - reference| = " + fmt(worst) +
             " over 50 random unitaries (tol 1e-9)");
}

// C5: F(N0 photons) equals F(1 photon)^N0 exactly, not just approximately.
void criterion_fock_power_law() {
  const Unitary echo =
      echo_unitary(chain_protocol(ReversalMode::SublatticeExchange));
  const double f1 = fidelity_fock(echo, FockState{3, 1});
  bool exact = true;
  for (int photons = 1; photons <= 6; ++photons)
    exact = exact && (fidelity_fock(echo, FockState{3, photons}) ==
                      std::pow(f1, static_cast<double>(photons)));
  report("C5 Fock revival power law", exact,
         std::string("F_N == F_1^N bitwise for N = 1..6, F_1 = ") + fmt(f1));
}

// C6: the clean-lattice revival improves monotonically with detuning.
void criterion_delta_monotonicity() {
  const RunResult result = run_scenario(default_config("fig2a"));
  const Table* sweep = nullptr;
  for (const Table& table : result.tables)
    if (table.name == "delta_sweep") sweep = &table;
  bool increasing = sweep != nullptr && sweep->rows.size() == 5;
  std::string values;
  if (sweep != nullptr) {
    for (std::size_t i = 0; i < sweep->rows.size(); ++i) {
      if (i > 0 && sweep->rows[i][1] <= sweep->rows[i - 1][1])
        increasing = false;
      values += (i ? ", " : "") + fmt(sweep->rows[i][1]);
    }
  }
  report("C6 fidelity grows with delta/kappa", increasing,
         "F(delta = 2,4,6,8,10) = " + values + " strictly increasing");
}

// C7: the disordered ensemble at delta/kappa = 10 stays inside the frozen
// band, with a tight spread, and its mean hugs the ordered value.
void criterion_disorder_ensemble() {
  constexpr double kBandLo = 0.95889871;
  constexpr double kBandHi = 0.99675217;
  const RunResult result = run_scenario(default_config("fig2b"));
  const Table* ensemble = nullptr;
  for (const Table& table : result.tables)
    if (table.name == "ensemble_delta_10") ensemble = &table;
  if (ensemble == nullptr || ensemble->rows.size() != 100) {
    report("C7 disordered ensemble", false, "ensemble_delta_10 table missing");
    return;
  }
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (const auto& row : ensemble->rows) {
    lo = std::min(lo, row[1]);
    hi = std::max(hi, row[1]);
    sum += row[1];
  }
  const double mean = sum / 100.0;
  const double ordered = result.scalars.at("ordered_delta_10");
  const bool in_band = lo >= kBandLo && hi <= kBandHi;
  const bool tight = (hi - lo) <= 0.1;
  const bool centred = std::abs(mean - ordered) <= 0.05;
  report("C7 disordered ensemble at delta/kappa = 10",
         in_band && tight && centred,
         "min = " + fmt(lo) + ", max = " + fmt(hi) + " in [" + fmt(kBandLo) +
             ", " + fmt(kBandHi) + "], spread = " + fmt(hi - lo) +
             " (tol 0.1), |mean - ordered| = " + fmt(std::abs(mean - ordered)) +
             " (tol 0.05)");
}

// C8: the 2D image revival lands at its pinned value.
void criterion_grid_revival() {
  constexpr double kGolden = 0.940484104908224;
  const RunResult result = run_scenario(default_config("fig4"));
  const double f = result.scalars.at("fidelity_final");
  const bool coarse = std::abs(f - 0.94) <= 0.05;
  const bool pinned = std::abs(f - kGolden) <= 1e-10;
  report("C8 2D glyph revival", coarse && pinned,
         "F(2L) = " + fmt(f) + ", golden " + fmt(kGolden) +
             " +/- 1e-10, coarse window 0.94 +/- 0.05");
}

// C9: the effective description reverses sign exactly, closes its own echo,
// and converges to the exact dynamics as the detuning grows.
void criterion_effective_model() {
  const LatticeSpec chain = LatticeSpec::uniform_chain(10, 1.0, 5.0);
  const Eigen::MatrixXd eff = build_effective(chain).matrix;
  const Eigen::MatrixXd flipped = build_effective(flip_detuning(chain)).matrix;
  bool sign_exact = true;
  for (int i = 0; i < eff.rows(); ++i)
    for (int j = 0; j < eff.cols(); ++j)
      sign_exact = sign_exact && (flipped(i, j) == -eff(i, j));

  const double echo_err = max_deviation_from_identity(
      evolve_unitary(Hamiltonian{-eff}, 25.0).matrix *
      evolve_unitary(Hamiltonian{eff}, 25.0).matrix);

  bool decreasing = true;
  std::string devs;
  double previous = 1.0;
  for (double delta : {5.0, 10.0, 20.0, 40.0}) {
    const double dev = effective_vs_exact_deviation(
        LatticeSpec::uniform_chain(10, 1.0, delta), 5.0, 501);
    decreasing = decreasing && dev < previous;
    previous = dev;
    devs += (devs.empty() ? "" : ", ") + fmt(dev);
  }

  report("C9 effective-model identities",
         sign_exact && echo_err <= 1e-10 && decreasing,
         std::string("sign flip ") + (sign_exact ? "exact" : "BROKEN") +
             ", echo deviation = " + fmt(echo_err) +
             " (tol 1e-10), deviations(delta = 5,10,20,40) = " + devs +
             " strictly decreasing");
}

// C10: a disordered ensemble writes byte-identical files on rerun, for any
// thread count.
void criterion_determinism() {
  const ScenarioConfig config = default_config("fig2b");
  const fs::path base = fs::temp_directory_path();
  const fs::path dir_a = base / "bwecho_acceptance_det_a";
  const fs::path dir_b = base / "bwecho_acceptance_det_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);

  const auto files_a = write_result(run_scenario(config, 1),
                                    OutputConfig{dir_a.string(), OutputFormat::Csv});
  const auto files_b = write_result(run_scenario(config, 4),
                                    OutputConfig{dir_b.string(), OutputFormat::Csv});

  bool identical = files_a == files_b;
  std::string mismatch;
  if (identical) {
    for (const auto& file : files_a) {
      std::ifstream in_a(dir_a / file, std::ios::binary);
      std::ifstream in_b(dir_b / file, std::ios::binary);
      std::ostringstream buf_a, buf_b;
      buf_a << in_a.rdbuf();
      buf_b << in_b.rdbuf();
      if (buf_a.str() != buf_b.str()) {
        identical = false;
        mismatch = file;
        break;
      }
    }
  }
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  report("C10 byte-identical reruns", identical,
         identical ? std::to_string(files_a.size()) +
                         " files identical across 1-thread and 4-thread runs"
                   : "files differ: " + mismatch);
}

}  // namespace

int main() {
  criterion_full_reversal();
  criterion_conservation();
  criterion_integrator_cross_check();
  criterion_closed_forms();
  criterion_fock_power_law();
  criterion_delta_monotonicity();
  criterion_disorder_ensemble();
  criterion_grid_revival();
  criterion_effective_model();
  criterion_determinism();

  if (failures == 0) {
    std::cout << "acceptance: all 10 criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteria FAILED\n";
  return 1;
}
