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

#include "bwecho/lattice.hpp"

#include <cmath>
#include <random>
#include <string>

namespace bwecho {

namespace {

// splitmix64-style finalizer; used to turn (seed, realization) pairs into
// well-separated generator seeds.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

LatticeSpec LatticeSpec::chain(std::vector<double> couplings, double delta) {
  LatticeSpec spec;
  spec.kind = LatticeKind::OneD;
  spec.rows = 1;
  spec.cols = static_cast<int>(couplings.size()) + 1;
  spec.couplings = std::move(couplings);
  spec.delta = delta;
  spec.validate();
  return spec;
}

LatticeSpec LatticeSpec::uniform_chain(int sites, double kappa, double delta) {
  if (sites < 1) throw InvalidSpec("chain needs at least one site");
  return chain(std::vector<double>(sites > 0 ? sites - 1 : 0, kappa), delta);
}

LatticeSpec LatticeSpec::grid(int rows, int cols, std::vector<double> couplings,
                              double delta) {
  LatticeSpec spec;
  spec.kind = LatticeKind::TwoD;
  spec.rows = rows;
  spec.cols = cols;
  spec.couplings = std::move(couplings);
  spec.delta = delta;
  spec.validate();
  return spec;
}

LatticeSpec LatticeSpec::uniform_grid(int rows, int cols, double kappa,
                                      double delta) {
  if (rows < 1 || cols < 1) throw InvalidSpec("grid needs positive rows, cols");
  const int edges = rows * (cols - 1) + (rows - 1) * cols;
  return grid(rows, cols, std::vector<double>(edges, kappa), delta);
}

int LatticeSpec::edge_count() const {
  if (kind == LatticeKind::OneD) return cols - 1;
  return rows * (cols - 1) + (rows - 1) * cols;
}

int LatticeSpec::flat_index(int row, int col) const {
  if (row < 0 || row >= rows || col < 0 || col >= cols)
    throw InvalidSpec("site (" + std::to_string(row) + ", " +
                      std::to_string(col) + ") outside a " +
                      std::to_string(rows) + " x " + std::to_string(cols) +
                      " lattice");
  return row * cols + col;
}

void LatticeSpec::validate() const {
  if (cols < 1) throw InvalidSpec("lattice needs at least one column of sites");
  if (rows < 1) throw InvalidSpec("lattice needs at least one row of sites");
  if (kind == LatticeKind::OneD && rows != 1)
    throw InvalidSpec("chains must have rows == 1");
  const auto expected = static_cast<std::size_t>(edge_count());
  if (couplings.size() != expected)
    throw InvalidSpec("expected " + std::to_string(expected) +
                      " couplings, got " + std::to_string(couplings.size()));
  for (std::size_t i = 0; i < couplings.size(); ++i) {
    const double k = couplings[i];
    // Zero is allowed: it just decouples the bond.
    if (!std::isfinite(k) || k < 0.0)
      throw InvalidSpec("coupling " + std::to_string(i) +
                        " must be finite and >= 0");
  }
  if (!std::isfinite(delta)) throw InvalidSpec("delta must be finite");
}

LatticeSpec flip_detuning(const LatticeSpec& spec) {
  LatticeSpec flipped = spec;
  flipped.delta = -spec.delta;
  return flipped;
}

Hamiltonian build_hamiltonian(const LatticeSpec& spec) {
  spec.validate();
  const int dim = spec.site_count();
  Hamiltonian h;
  h.matrix = Eigen::MatrixXd::Zero(dim, dim);

  if (spec.kind == LatticeKind::OneD) {
    for (int n = 0; n + 1 < spec.cols; ++n) {
      h.matrix(n, n + 1) = spec.couplings[static_cast<std::size_t>(n)];
      h.matrix(n + 1, n) = spec.couplings[static_cast<std::size_t>(n)];
    }
    for (int n = 0; n < spec.cols; ++n)
      h.matrix(n, n) = (n % 2 == 0) ? spec.delta : -spec.delta;
    return h;
  }

  // Grid: horizontal edges first (row by row), then vertical edges.
  std::size_t e = 0;
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c + 1 < spec.cols; ++c, ++e) {
      const int a = spec.flat_index(r, c);
      const int b = spec.flat_index(r, c + 1);
      h.matrix(a, b) = spec.couplings[e];
      h.matrix(b, a) = spec.couplings[e];
    }
  }
  for (int r = 0; r + 1 < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c, ++e) {
      const int a = spec.flat_index(r, c);
      const int b = spec.flat_index(r + 1, c);
      h.matrix(a, b) = spec.couplings[e];
      h.matrix(b, a) = spec.couplings[e];
    }
  }
  for (int r = 0; r < spec.rows; ++r)
    for (int c = 0; c < spec.cols; ++c)
      h.matrix(spec.flat_index(r, c), spec.flat_index(r, c)) =
          ((r + c) % 2 == 0) ? spec.delta : -spec.delta;
  return h;
}

std::vector<double> sample_disordered_couplings(double base_kappa, int count,
                                                const DisorderSpec& disorder) {
  if (!(std::isfinite(base_kappa)) || base_kappa < 0.0)
    throw InvalidSpec("base coupling must be finite and >= 0");
  if (count < 0) throw InvalidSpec("coupling count must be >= 0");
  if (!(disorder.sigma_max >= 0.0) || disorder.sigma_max >= 1.0)
    throw InvalidSpec("sigma_max must lie in [0, 1)");

  // One private generator per (seed, realization) pair. Draws depend on
  // nothing else, so realizations can run in any order or concurrently.
  std::mt19937_64 gen(mix64(mix64(disorder.seed) ^
                            mix64(~disorder.realization_index)));
  std::vector<double> couplings(static_cast<std::size_t>(count));
  for (auto& k : couplings) {
    // Uniform on the open interval (0, 1): offset the 53-bit mantissa by
    // half a step so 0 and 1 are unreachable. Avoids the closed-endpoint
    // and platform-variance pitfalls of uniform_real_distribution.
    const std::uint64_t bits = gen();
    const double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    k = base_kappa * (1.0 + disorder.sigma_max * (2.0 * u - 1.0));
  }
  return couplings;
}

BandEnergies band_energies(double kappa, double delta, double q) {
  if (!std::isfinite(kappa) || kappa < 0.0)
    throw InvalidSpec("kappa must be finite and >= 0");
  if (!std::isfinite(delta) || !std::isfinite(q))
    throw InvalidSpec("delta and q must be finite");
  // +/- sqrt(delta^2 + 4 kappa^2 cos^2 q); hypot keeps the delta -> 0 and
  // cos q -> 0 limits exact without a separate branch.
  const double e = std::hypot(delta, 2.0 * kappa * std::cos(q));
  return BandEnergies{e, -e};
}

}  // namespace bwecho
