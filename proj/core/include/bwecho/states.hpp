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

#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bwecho/errors.hpp"
#include "bwecho/propagator.hpp"

namespace bwecho {

// Input light states. Sites refer to flattened lattice indices (0-based).

// Classical beam / single photon: one amplitude per waveguide.
struct SingleParticleState {
  Eigen::VectorXcd amplitudes;
};

// |N0> Fock state launched into one waveguide.
struct FockState {
  int site = 0;
  int photons = 1;
};

// (|N0,0> + e^{i phase} |0,N0>)/sqrt(2) across two waveguides.
struct NoonState {
  int site1 = 0;
  int site2 = 1;
  int photons = 1;
  double phase = 0.0;
};

// One photon shared coherently across a set of waveguides.
struct WState {
  std::vector<int> sites;
};

using InputState =
    std::variant<SingleParticleState, FockState, NoonState, WState>;

int total_photons(const InputState& state);

// Throws InvalidSpec unless the state fits a `dim`-site lattice: indices in
// range and distinct where required, photons >= 1, amplitudes finite and
// not all zero, W site lists non-empty and duplicate-free.
void validate_input_state(const InputState& state, int dim);

// Echo fidelities F = |<psi(0)|psi(2L)>| given the full-protocol propagator.

// |<alpha, U alpha>| / <alpha, alpha>; the normalisation makes the result
// independent of overall amplitude scale.
double fidelity_single(const Unitary& u, const SingleParticleState& state);

// |U_ss|^N0 for N0 photons in site s.
double fidelity_fock(const Unitary& u, const FockState& state);

// (1/2) |U11^N0 + U22^N0 + e^{i phi} U12^N0 + e^{-i phi} U21^N0| with
// Ujk = U_{site_j site_k}. The phase enters only through e^{+/- i phi}, so
// it is reduced with remainder(phi, 2 pi) first; shifting phi by a full
// turn cannot change the result, not even in the last bit.
double fidelity_noon(const Unitary& u, const NoonState& state);

// Fidelity of the W state, i.e. of the uniform single-photon amplitude
// distribution over its sites.
double fidelity_w(const Unitary& u, const WState& state);

double fidelity(const Unitary& u, const InputState& state);

// Mean photon number per waveguide after the evolution described by `u`.
// For classical input this is intensity normalised to unit total power.
Eigen::VectorXd mean_photon_numbers(const Unitary& u, const InputState& state);

// --- Fock-space oracle -----------------------------------------------------
//
// Brute-force reference used to validate the closed forms above. Expands the
// state in the full N-photon occupation basis; transition amplitudes are
// matrix permanents. Rejects anything beyond a small desk-scale budget.

// Permanent by Ryser's formula with Gray-code subset updates, O(2^n n).
// Policy limit n <= 8 (CapacityExceeded beyond).
std::complex<double> permanent(const Eigen::MatrixXcd& m);

using OccupationVector = std::vector<int>;

// All occupation vectors of `total` photons over `num_modes` modes, in
// lexicographically decreasing order of occupation.
std::vector<OccupationVector> enumerate_occupations(int num_modes, int total);

// Full Fock-space echo fidelity. Limits: total photons <= 4, lattice
// dimension <= 8 (basis of at most 330 states).
double fock_space_fidelity_oracle(const Unitary& u, const InputState& state);

// --- Results ---------------------------------------------------------------

struct FidelityCurve {
  std::vector<double> z;
  std::vector<double> fidelity;
};

}  // namespace bwecho
