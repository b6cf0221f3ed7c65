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

#include "bwecho/propagator.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace bwecho {

namespace {

using Complex = std::complex<double>;

void check_square_finite(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw InvalidSpec(std::string(what) + " must be square and non-empty");
  if (!m.allFinite())
    throw NumericFailure(std::string(what) + " has non-finite entries");
}

void check_distance(double z) {
  if (!std::isfinite(z) || z < 0.0)
    throw InvalidSpec("propagation distance must be finite and >= 0");
}

void check_step(double step) {
  if (!std::isfinite(step) || step <= 0.0)
    throw InvalidSpec("integration step must be finite and > 0");
}

}  // namespace

SpectralDecomposition decompose(const Hamiltonian& hamiltonian) {
  check_square_finite(hamiltonian.matrix, "Hamiltonian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian.matrix);
  if (solver.info() != Eigen::Success)
    throw NumericFailure("eigendecomposition did not converge");
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

Unitary propagate(const SpectralDecomposition& decomposition, double z) {
  check_distance(z);
  const auto n = decomposition.eigenvalues.size();
  if (decomposition.eigenvectors.rows() != n ||
      decomposition.eigenvectors.cols() != n)
    throw InvalidSpec("inconsistent spectral decomposition");
  Eigen::VectorXcd phases(n);
  for (Eigen::Index k = 0; k < n; ++k)
    phases[k] = std::exp(Complex(0.0, -decomposition.eigenvalues[k] * z));
  const Eigen::MatrixXcd v = decomposition.eigenvectors.cast<Complex>();
  return Unitary{v * phases.asDiagonal() * v.transpose()};
}

Unitary evolve_unitary(const Hamiltonian& hamiltonian, double z) {
  return propagate(decompose(hamiltonian), z);
}

namespace {

// One RK4 step of y' = -i H y for either a vector or a matrix state.
template <typename State>
void rk4_step(const Eigen::MatrixXcd& h, double step, State& y) {
  const Complex c(0.0, -1.0);
  const State k1 = c * (h * y);
  const State k2 = c * (h * (y + (0.5 * step) * k1));
  const State k3 = c * (h * (y + (0.5 * step) * k2));
  const State k4 = c * (h * (y + step * k3));
  y += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename State>
void rk4_integrate(const Eigen::MatrixXcd& h, double z, double step,
                   State& y) {
  const auto full_steps = static_cast<long long>(std::floor(z / step));
  for (long long i = 0; i < full_steps; ++i) rk4_step(h, step, y);
  const double remainder = z - static_cast<double>(full_steps) * step;
  if (remainder > 0.0) rk4_step(h, remainder, y);
  if (!y.allFinite())
    throw NumericFailure("RK4 state became non-finite");
}

}  // namespace

Eigen::VectorXcd evolve_rk4(const Hamiltonian& hamiltonian,
                            const Eigen::VectorXcd& initial, double z,
                            double step) {
  check_square_finite(hamiltonian.matrix, "Hamiltonian");
  check_distance(z);
  check_step(step);
  if (initial.size() != hamiltonian.matrix.rows())
    throw InvalidSpec("state dimension does not match the Hamiltonian");
  if (!initial.allFinite())
    throw NumericFailure("initial state has non-finite entries");
  const Eigen::MatrixXcd h = hamiltonian.matrix.cast<Complex>();
  Eigen::VectorXcd y = initial;
  rk4_integrate(h, z, step, y);
  return y;
}

Unitary evolve_rk4_unitary(const Hamiltonian& hamiltonian, double z,
                           double step) {
  check_square_finite(hamiltonian.matrix, "Hamiltonian");
  check_distance(z);
  check_step(step);
  const Eigen::MatrixXcd h = hamiltonian.matrix.cast<Complex>();
  Eigen::MatrixXcd y =
      Eigen::MatrixXcd::Identity(h.rows(), h.cols());
  rk4_integrate(h, z, step, y);
  return Unitary{std::move(y)};
}

Unitary echo_unitary(const EchoProtocol& protocol) {
  check_distance(protocol.segment_length);
  const Hamiltonian h1 = build_hamiltonian(protocol.spec);
  Hamiltonian h2;
  if (protocol.reversal == ReversalMode::SublatticeExchange) {
    h2 = build_hamiltonian(flip_detuning(protocol.spec));
  } else {
    h2.matrix = -h1.matrix;
  }
  const Unitary u1 = evolve_unitary(h1, protocol.segment_length);
  const Unitary u2 = evolve_unitary(h2, protocol.segment_length);
  return Unitary{u2.matrix * u1.matrix};
}

}  // namespace bwecho
