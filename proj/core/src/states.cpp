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

#include "bwecho/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace bwecho {

namespace {

using Complex = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_site(int site, int dim, const char* label) {
  if (site < 0 || site >= dim)
    throw InvalidSpec(std::string(label) + " " + std::to_string(site) +
                      " outside a lattice of " + std::to_string(dim) +
                      " sites");
}

void validate_single(const SingleParticleState& state, int dim) {
  if (state.amplitudes.size() != dim)
    throw InvalidSpec("amplitude vector has " +
                      std::to_string(state.amplitudes.size()) +
                      " entries, lattice has " + std::to_string(dim));
  if (!state.amplitudes.allFinite())
    throw InvalidSpec("amplitudes must be finite");
  if (state.amplitudes.squaredNorm() == 0.0)
    throw InvalidSpec("amplitudes must not all vanish");
}

void validate_fock(const FockState& state, int dim) {
  check_site(state.site, dim, "Fock site");
  if (state.photons < 1) throw InvalidSpec("photon number must be >= 1");
}

void validate_noon(const NoonState& state, int dim) {
  check_site(state.site1, dim, "NOON site");
  check_site(state.site2, dim, "NOON site");
  if (state.site1 == state.site2)
    throw InvalidSpec("NOON sites must be distinct");
  if (state.photons < 1) throw InvalidSpec("photon number must be >= 1");
  if (!std::isfinite(state.phase)) throw InvalidSpec("phase must be finite");
}

void validate_w(const WState& state, int dim) {
  if (state.sites.empty()) throw InvalidSpec("W state needs at least one site");
  for (int site : state.sites) check_site(site, dim, "W site");
  std::vector<int> sorted = state.sites;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidSpec("W sites must be distinct");
}

// Integer power by plain multiplication; keeps the closed forms in the same
// arithmetic as the permanent-based reference.
Complex ipow(Complex z, int n) {
  Complex result(1.0, 0.0);
  for (int i = 0; i < n; ++i) result *= z;
  return result;
}

Eigen::VectorXcd w_amplitudes(const WState& state, int dim) {
  Eigen::VectorXcd alpha = Eigen::VectorXcd::Zero(dim);
  const double a = 1.0 / std::sqrt(static_cast<double>(state.sites.size()));
  for (int site : state.sites) alpha[site] = Complex(a, 0.0);
  return alpha;
}

}  // namespace

int total_photons(const InputState& state) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FockState> ||
                      std::is_same_v<T, NoonState>) {
          return s.photons;
        } else {
          return 1;
        }
      },
      state);
}

void validate_input_state(const InputState& state, int dim) {
  if (dim < 1) throw InvalidSpec("lattice dimension must be >= 1");
  std::visit([dim](const auto& s) {
    using T = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<T, SingleParticleState>) {
      validate_single(s, dim);
    } else if constexpr (std::is_same_v<T, FockState>) {
      validate_fock(s, dim);
    } else if constexpr (std::is_same_v<T, NoonState>) {
      validate_noon(s, dim);
    } else {
      validate_w(s, dim);
    }
  }, state);
}

double fidelity_single(const Unitary& u, const SingleParticleState& state) {
  validate_single(state, u.dim());
  const Complex overlap = state.amplitudes.dot(u.matrix * state.amplitudes);
  return std::abs(overlap) / state.amplitudes.squaredNorm();
}

double fidelity_fock(const Unitary& u, const FockState& state) {
  validate_fock(state, u.dim());
  return std::pow(std::abs(u.matrix(state.site, state.site)),
                  static_cast<double>(state.photons));
}

double fidelity_noon(const Unitary& u, const NoonState& state) {
  validate_noon(state, u.dim());
  const int n1 = state.site1;
  const int n2 = state.site2;
  const int n0 = state.photons;
  // Reduce the phase to (-pi, pi] first: only e^{+/- i phi} enters, so a
  // full 2 pi shift must leave the result identical to the last bit.
  const double phi = std::remainder(state.phase, kTwoPi);
  const Complex cross = std::exp(Complex(0.0, phi)) * ipow(u.matrix(n1, n2), n0) +
                        std::exp(Complex(0.0, -phi)) * ipow(u.matrix(n2, n1), n0);
  const Complex stay = ipow(u.matrix(n1, n1), n0) + ipow(u.matrix(n2, n2), n0);
  return 0.5 * std::abs(stay + cross);
}

double fidelity_w(const Unitary& u, const WState& state) {
  validate_w(state, u.dim());
  return fidelity_single(u, SingleParticleState{w_amplitudes(state, u.dim())});
}

double fidelity(const Unitary& u, const InputState& state) {
  return std::visit(
      [&u](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SingleParticleState>) {
          return fidelity_single(u, s);
        } else if constexpr (std::is_same_v<T, FockState>) {
          return fidelity_fock(u, s);
        } else if constexpr (std::is_same_v<T, NoonState>) {
          return fidelity_noon(u, s);
        } else {
          return fidelity_w(u, s);
        }
      },
      state);
}

Eigen::VectorXd mean_photon_numbers(const Unitary& u, const InputState& state) {
  const int dim = u.dim();
  validate_input_state(state, dim);
  return std::visit(
      [&](const auto& s) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SingleParticleState>) {
          const Eigen::VectorXcd psi = u.matrix * s.amplitudes;
          return psi.cwiseAbs2() / s.amplitudes.squaredNorm();
        } else if constexpr (std::is_same_v<T, FockState>) {
          return static_cast<double>(s.photons) *
                 u.matrix.col(s.site).cwiseAbs2();
        } else if constexpr (std::is_same_v<T, NoonState>) {
          if (s.photons == 1) {
            // One photon is an ordinary superposition: the two launch
            // amplitudes interfere.
            const double phi = std::remainder(s.phase, kTwoPi);
            const Eigen::VectorXcd psi =
                (u.matrix.col(s.site1) +
                 std::exp(Complex(0.0, phi)) * u.matrix.col(s.site2)) /
                std::sqrt(2.0);
            return psi.cwiseAbs2();
          }
          // For N0 >= 2 the |N0,0> and |0,N0> branches contribute photon
          // numbers without interfering (their images stay orthogonal), so
          // the mean is the equal mixture of the two Fock columns.
          return (0.5 * s.photons) * (u.matrix.col(s.site1).cwiseAbs2() +
                                      u.matrix.col(s.site2).cwiseAbs2());
        } else {
          const Eigen::VectorXcd psi = u.matrix * w_amplitudes(s, dim);
          return psi.cwiseAbs2();
        }
      },
      state);
}

// --- Fock-space oracle -----------------------------------------------------

std::complex<double> permanent(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw InvalidSpec("permanent needs a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n > 8)
    throw CapacityExceeded("permanent limited to 8 x 8, got " +
                           std::to_string(n));
  if (n == 0) return Complex(1.0, 0.0);

  // Ryser's formula with Gray-code subset updates: for each non-empty
  // column subset S keep the running row sums, take the product over rows,
  // and weight by (-1)^(n - |S|).
  Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(n);
  Complex total(0.0, 0.0);
  const std::uint32_t count = 1u << n;
  for (std::uint32_t k = 1; k < count; ++k) {
    const std::uint32_t gray = k ^ (k >> 1);
    const int j = std::countr_zero(k);
    if (gray & (1u << j))
      row_sums += m.col(j);
    else
      row_sums -= m.col(j);
    const Complex prod = row_sums.prod();
    const int bits = std::popcount(gray);
    total += ((n - bits) % 2 == 0) ? prod : -prod;
  }
  return total;
}

std::vector<OccupationVector> enumerate_occupations(int num_modes, int total) {
  if (num_modes < 1) throw InvalidSpec("need at least one mode");
  if (total < 0) throw InvalidSpec("photon total must be >= 0");
  std::vector<OccupationVector> result;
  OccupationVector current(static_cast<std::size_t>(num_modes), 0);
  // Depth-first, handing each mode as many photons as possible first; that
  // yields lexicographically decreasing occupation vectors.
  auto recurse = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == num_modes - 1) {
      current[static_cast<std::size_t>(mode)] = remaining;
      result.push_back(current);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      current[static_cast<std::size_t>(mode)] = k;
      self(self, mode + 1, remaining - k);
    }
  };
  recurse(recurse, 0, total);
  return result;
}

namespace {

constexpr double kFactorial[] = {1.0, 1.0, 2.0, 6.0, 24.0};

// <t| U^(N) |s> for occupation vectors t, s of N photons: the permanent of
// U with rows repeated per t and columns per s, normalised by the
// occupation factorials.
Complex transition_amplitude(const Eigen::MatrixXcd& u,
                             const OccupationVector& target,
                             const OccupationVector& source, int photons) {
  Eigen::MatrixXcd sub(photons, photons);
  int row = 0;
  for (std::size_t i = 0; i < target.size(); ++i)
    for (int rep = 0; rep < target[i]; ++rep, ++row) {
      int col = 0;
      for (std::size_t j = 0; j < source.size(); ++j)
        for (int rep2 = 0; rep2 < source[j]; ++rep2, ++col)
          sub(row, col) = u(static_cast<Eigen::Index>(i),
                            static_cast<Eigen::Index>(j));
    }
  double norm = 1.0;
  for (int t : target) norm *= kFactorial[t];
  for (int s : source) norm *= kFactorial[s];
  return permanent(sub) / std::sqrt(norm);
}

// Initial state as (occupation vector, coefficient) pairs.
std::vector<std::pair<OccupationVector, Complex>> expand_initial(
    const InputState& state, int dim) {
  std::vector<std::pair<OccupationVector, Complex>> terms;
  const auto basis_occ = [dim](int site, int photons) {
    OccupationVector occ(static_cast<std::size_t>(dim), 0);
    occ[static_cast<std::size_t>(site)] = photons;
    return occ;
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SingleParticleState>) {
          const double norm = std::sqrt(s.amplitudes.squaredNorm());
          for (int i = 0; i < dim; ++i) {
            const Complex a = s.amplitudes[i] / norm;
            if (a != Complex(0.0, 0.0)) terms.emplace_back(basis_occ(i, 1), a);
          }
        } else if constexpr (std::is_same_v<T, FockState>) {
          terms.emplace_back(basis_occ(s.site, s.photons), Complex(1.0, 0.0));
        } else if constexpr (std::is_same_v<T, NoonState>) {
          const double inv = 1.0 / std::sqrt(2.0);
          terms.emplace_back(basis_occ(s.site1, s.photons), Complex(inv, 0.0));
          terms.emplace_back(
              basis_occ(s.site2, s.photons),
              inv * std::exp(Complex(0.0, std::remainder(s.phase, kTwoPi))));
        } else {
          const double inv = 1.0 / std::sqrt(double(s.sites.size()));
          for (int site : s.sites)
            terms.emplace_back(basis_occ(site, 1), Complex(inv, 0.0));
        }
      },
      state);
  return terms;
}

}  // namespace

double fock_space_fidelity_oracle(const Unitary& u, const InputState& state) {
  const int dim = u.dim();
  validate_input_state(state, dim);
  const int photons = total_photons(state);
  if (photons > 4)
    throw CapacityExceeded("Fock-space oracle limited to 4 photons, got " +
                           std::to_string(photons));
  if (dim > 8)
    throw CapacityExceeded("Fock-space oracle limited to 8 modes, got " +
                           std::to_string(dim));

  const auto initial = expand_initial(state, dim);
  const auto basis = enumerate_occupations(dim, photons);
  std::map<OccupationVector, Complex> initial_lookup;
  for (const auto& [occ, coeff] : initial) initial_lookup[occ] += coeff;

  // Propagate every initial term through the full multi-photon unitary and
  // overlap with the initial coefficients.
  Complex overlap(0.0, 0.0);
  for (const auto& target : basis) {
    const auto found = initial_lookup.find(target);
    if (found == initial_lookup.end()) continue;
    Complex final_coeff(0.0, 0.0);
    for (const auto& [source, coeff] : initial)
      final_coeff +=
          coeff * transition_amplitude(u.matrix, target, source, photons);
    overlap += std::conj(found->second) * final_coeff;
  }
  return std::abs(overlap);
}

}  // namespace bwecho
