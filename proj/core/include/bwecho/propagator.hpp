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

#include <Eigen/Dense>

#include "bwecho/errors.hpp"
#include "bwecho/lattice.hpp"

namespace bwecho {

struct Unitary {
  Eigen::MatrixXcd matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // columns are orthonormal eigenvectors
};

// Eigendecomposition of a real symmetric Hamiltonian. Throws NumericFailure
// if the matrix contains non-finite entries or the solver does not converge.
SpectralDecomposition decompose(const Hamiltonian& hamiltonian);

// U(z) = V exp(-i lambda z) V^T from a precomputed decomposition.
Unitary propagate(const SpectralDecomposition& decomposition, double z);

// Convenience: decompose + propagate in one call.
Unitary evolve_unitary(const Hamiltonian& hamiltonian, double z);

// Classic fixed-step RK4 on d alpha / dz = -i H alpha. Used as an
// independent cross-check of the spectral propagator, not in production
// paths. The interval is covered by floor(z/step) full steps plus one final
// short step. Throws NumericFailure if the state stops being finite.
Eigen::VectorXcd evolve_rk4(const Hamiltonian& hamiltonian,
                            const Eigen::VectorXcd& initial, double z,
                            double step);

// Column-by-column RK4 of the full propagator (starts from the identity).
Unitary evolve_rk4_unitary(const Hamiltonian& hamiltonian, double z,
                           double step);

enum class ReversalMode {
  // Second segment evolves under the detuning-flipped Hamiltonian. This is
  // the physical protocol: only the +/-delta pattern is exchanged.
  SublatticeExchange,
  // Second segment evolves under the exact negated Hamiltonian -H1. The
  // echo is then perfect by construction; kept as a testing reference.
  FullReversal,
};

struct EchoProtocol {
  LatticeSpec spec;              // first-segment lattice
  double segment_length = 0.0;   // L, each segment's propagation distance
  ReversalMode reversal = ReversalMode::SublatticeExchange;
};

// Full-protocol propagator U = U2(L) U1(L). Throws InvalidSpec for negative
// or non-finite segment lengths.
Unitary echo_unitary(const EchoProtocol& protocol);

}  // namespace bwecho
