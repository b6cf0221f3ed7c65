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
#include <vector>

#include <Eigen/Dense>

#include "bwecho/errors.hpp"

namespace bwecho {

// Binary (two-sublattice) waveguide arrays. Sites are indexed from 0;
// sublattice A is the even sites and carries detuning +delta, sublattice B
// the odd sites with -delta. On a grid the sign is (-1)^(row+col).

enum class LatticeKind {
  OneD,  // open chain of `cols` waveguides
  TwoD,  // open rows x cols square grid
};

struct LatticeSpec {
  LatticeKind kind = LatticeKind::OneD;
  int rows = 1;  // 1 for chains
  int cols = 0;
  // Nearest-neighbour couplings in edge order. Chains: couplings[n] joins
  // sites n and n+1. Grids: all horizontal edges row by row, then all
  // vertical edges row by row.
  std::vector<double> couplings;
  double delta = 0.0;  // staggered propagation-constant detuning

  static LatticeSpec chain(std::vector<double> couplings, double delta);
  static LatticeSpec uniform_chain(int sites, double kappa, double delta);
  static LatticeSpec grid(int rows, int cols, std::vector<double> couplings,
                          double delta);
  static LatticeSpec uniform_grid(int rows, int cols, double kappa,
                                  double delta);

  int site_count() const { return rows * cols; }
  int edge_count() const;
  // Row-major flattening of grid coordinates; also valid for chains (row 0).
  int flat_index(int row, int col) const;

  // Throws InvalidSpec unless sizes are positive, the coupling vector has
  // exactly edge_count() entries, and every entry is finite and >= 0.
  void validate() const;
};

// Negate the detuning, keeping every coupling bit-identical. This is the
// sublattice-exchange step between the two propagation segments.
LatticeSpec flip_detuning(const LatticeSpec& spec);

struct Hamiltonian {
  Eigen::MatrixXd matrix;  // real symmetric, dim = site_count()

  int dim() const { return static_cast<int>(matrix.rows()); }
};

// Single-particle Hamiltonian of the array: couplings on nearest-neighbour
// bonds, staggered +/-delta on the diagonal. Validates the spec first.
Hamiltonian build_hamiltonian(const LatticeSpec& spec);

struct DisorderSpec {
  double sigma_max = 0.2;          // couplings become kappa*(1+s), |s|<sigma_max
  std::uint64_t seed = 0;          // master seed for the whole ensemble
  std::uint64_t realization_index = 0;  // which member of the ensemble
};

// Draw `count` disordered couplings kappa*(1+s), s uniform on the open
// interval (-sigma_max, sigma_max). The stream depends only on
// (seed, realization_index), so ensemble members can be generated in any
// order, or in parallel, with identical results.
std::vector<double> sample_disordered_couplings(double base_kappa, int count,
                                                const DisorderSpec& disorder);

struct BandEnergies {
  double upper = 0.0;
  double lower = 0.0;
};

// Bulk dispersion of the uniform binary chain at Bloch momentum q:
// +/- sqrt(delta^2 + 4 kappa^2 cos^2 q). The hypot form is exact for
// delta = 0 as well, where the bands touch at q = pi/2.
BandEnergies band_energies(double kappa, double delta, double q);

}  // namespace bwecho
