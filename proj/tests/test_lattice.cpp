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

#include "doctest.h"

using namespace bwecho;

TEST_CASE("uniform chain Hamiltonian has staggered diagonal and NN bonds") {
  const LatticeSpec spec = LatticeSpec::uniform_chain(4, 1.0, 2.0);
  const Hamiltonian h = build_hamiltonian(spec);
  Eigen::MatrixXd expected(4, 4);
  expected << 2, 1, 0, 0,
              1, -2, 1, 0,
              0, 1, 2, 1,
              0, 0, 1, -2;
  CHECK((h.matrix - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("chain with explicit couplings places them on consecutive bonds") {
  const LatticeSpec spec = LatticeSpec::chain({0.5, 1.5}, 0.25);
  const Hamiltonian h = build_hamiltonian(spec);
  CHECK(h.matrix(0, 1) == 0.5);
  CHECK(h.matrix(1, 0) == 0.5);
  CHECK(h.matrix(1, 2) == 1.5);
  CHECK(h.matrix(0, 2) == 0.0);
  CHECK(h.matrix(0, 0) == 0.25);
  CHECK(h.matrix(1, 1) == -0.25);
}

TEST_CASE("2x2 grid Hamiltonian") {
  const LatticeSpec spec = LatticeSpec::uniform_grid(2, 2, 1.0, 2.0);
  CHECK(spec.edge_count() == 4);
  const Hamiltonian h = build_hamiltonian(spec);
  Eigen::MatrixXd expected(4, 4);
  expected << 2, 1, 1, 0,
              1, -2, 0, 1,
              1, 0, -2, 1,
              0, 1, 1, 2;
  CHECK((h.matrix - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grid edge ordering is horizontal rows first, then vertical") {
  // 2x3 grid: 4 horizontal edges, 3 vertical ones.
  std::vector<double> couplings = {1, 2, 3, 4, 5, 6, 7};
  const LatticeSpec spec = LatticeSpec::grid(2, 3, couplings, 0.0);
  const Hamiltonian h = build_hamiltonian(spec);
  CHECK(h.matrix(0, 1) == 1);  // (0,0)-(0,1)
  CHECK(h.matrix(1, 2) == 2);  // (0,1)-(0,2)
  CHECK(h.matrix(3, 4) == 3);  // (1,0)-(1,1)
  CHECK(h.matrix(4, 5) == 4);  // (1,1)-(1,2)
  CHECK(h.matrix(0, 3) == 5);  // (0,0)-(1,0)
  CHECK(h.matrix(1, 4) == 6);  // (0,1)-(1,1)
  CHECK(h.matrix(2, 5) == 7);  // (0,2)-(1,2)
}

TEST_CASE("zero couplings decouple the sites") {
  const LatticeSpec spec = LatticeSpec::uniform_chain(3, 0.0, 1.5);
  const Hamiltonian h = build_hamiltonian(spec);
  CHECK(h.matrix.isDiagonal(0.0));
  CHECK(h.matrix(0, 0) == 1.5);
  CHECK(h.matrix(1, 1) == -1.5);
}

TEST_CASE("single-site chain") {
  const LatticeSpec spec = LatticeSpec::uniform_chain(1, 1.0, 0.7);
  CHECK(spec.edge_count() == 0);
  const Hamiltonian h = build_hamiltonian(spec);
  CHECK(h.dim() == 1);
  CHECK(h.matrix(0, 0) == 0.7);
}

TEST_CASE("spec validation rejects malformed lattices") {
  CHECK_THROWS_AS(LatticeSpec::chain({1.0, -0.5}, 0.0), InvalidSpec);
  CHECK_THROWS_AS(LatticeSpec::uniform_chain(0, 1.0, 0.0), InvalidSpec);
  CHECK_THROWS_AS(LatticeSpec::uniform_grid(0, 3, 1.0, 0.0), InvalidSpec);
  CHECK_THROWS_AS(
      LatticeSpec::chain({1.0, std::nan("")}, 0.0), InvalidSpec);
  CHECK_THROWS_AS(LatticeSpec::chain({1.0}, std::nan("")), InvalidSpec);

  LatticeSpec wrong_count = LatticeSpec::uniform_chain(4, 1.0, 1.0);
  wrong_count.couplings.pop_back();
  CHECK_THROWS_AS(wrong_count.validate(), InvalidSpec);

  LatticeSpec bad_rows = LatticeSpec::uniform_chain(4, 1.0, 1.0);
  bad_rows.rows = 2;
  CHECK_THROWS_AS(bad_rows.validate(), InvalidSpec);
}

TEST_CASE("flat_index is row-major and range checked") {
  const LatticeSpec spec = LatticeSpec::uniform_grid(3, 4, 1.0, 0.0);
  CHECK(spec.flat_index(0, 0) == 0);
  CHECK(spec.flat_index(1, 2) == 6);
  CHECK(spec.flat_index(2, 3) == 11);
  CHECK_THROWS_AS(spec.flat_index(3, 0), InvalidSpec);
  CHECK_THROWS_AS(spec.flat_index(0, 4), InvalidSpec);
  CHECK_THROWS_AS(spec.flat_index(-1, 0), InvalidSpec);
}

TEST_CASE("flip_detuning negates delta and keeps couplings bit-identical") {
  const LatticeSpec spec = LatticeSpec::chain({0.9, 1.1, 1.0}, 5.0);
  const LatticeSpec flipped = flip_detuning(spec);
  CHECK(flipped.delta == -5.0);
  CHECK(flipped.couplings == spec.couplings);
  CHECK(flip_detuning(flipped).delta == spec.delta);
}

TEST_CASE("disorder draws are bounded and deterministic") {
  DisorderSpec disorder;
  disorder.sigma_max = 0.2;
  disorder.seed = 4242;
  disorder.realization_index = 7;

  const auto draw = sample_disordered_couplings(1.0, 64, disorder);
  REQUIRE(draw.size() == 64);
  for (double k : draw) {
    CHECK(k > 1.0 - 0.2);
    CHECK(k < 1.0 + 0.2);
  }

  // Same (seed, realization) -> identical; either different -> different.
  CHECK(sample_disordered_couplings(1.0, 64, disorder) == draw);
  DisorderSpec other = disorder;
  other.realization_index = 8;
  CHECK(sample_disordered_couplings(1.0, 64, other) != draw);
  other = disorder;
  other.seed = 4243;
  CHECK(sample_disordered_couplings(1.0, 64, other) != draw);
}

TEST_CASE("disorder realizations are order independent") {
  DisorderSpec disorder;
  disorder.sigma_max = 0.1;
  disorder.seed = 99;

  disorder.realization_index = 5;
  const auto fifth_first = sample_disordered_couplings(2.0, 8, disorder);
  disorder.realization_index = 3;
  const auto third = sample_disordered_couplings(2.0, 8, disorder);
  disorder.realization_index = 5;
  CHECK(sample_disordered_couplings(2.0, 8, disorder) == fifth_first);
  disorder.realization_index = 3;
  CHECK(sample_disordered_couplings(2.0, 8, disorder) == third);
}

TEST_CASE("zero disorder returns the base coupling exactly") {
  DisorderSpec disorder;
  disorder.sigma_max = 0.0;
  const auto draw = sample_disordered_couplings(1.3, 5, disorder);
  for (double k : draw) CHECK(k == 1.3);
}

TEST_CASE("disorder parameter guards") {
  DisorderSpec disorder;
  disorder.sigma_max = 1.0;
  CHECK_THROWS_AS(sample_disordered_couplings(1.0, 4, disorder), InvalidSpec);
  disorder.sigma_max = -0.1;
  CHECK_THROWS_AS(sample_disordered_couplings(1.0, 4, disorder), InvalidSpec);
  disorder.sigma_max = 0.2;
  CHECK_THROWS_AS(sample_disordered_couplings(-1.0, 4, disorder), InvalidSpec);
  CHECK_THROWS_AS(sample_disordered_couplings(1.0, -1, disorder), InvalidSpec);
}

TEST_CASE("band energies") {
  const BandEnergies at_zero = band_energies(1.0, 2.0, 0.0);
  CHECK(at_zero.upper == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
  CHECK(at_zero.lower == -at_zero.upper);

  // Gapless limit: +/- 2 kappa |cos q|.
  const BandEnergies gapless = band_energies(1.5, 0.0, 0.4);
  CHECK(gapless.upper ==
        doctest::Approx(3.0 * std::abs(std::cos(0.4))).epsilon(1e-14));

  // At the zone edge the bands sit at +/- delta.
  const BandEnergies edge = band_energies(1.0, 3.0, std::acos(-1.0) / 2.0);
  CHECK(edge.upper == doctest::Approx(3.0).epsilon(1e-14));

  // Symmetric in q.
  CHECK(band_energies(1.0, 2.0, 0.7).upper ==
        band_energies(1.0, 2.0, -0.7).upper);

  CHECK_THROWS_AS(band_energies(-1.0, 0.0, 0.0), InvalidSpec);
  CHECK_THROWS_AS(band_energies(1.0, std::nan(""), 0.0), InvalidSpec);
}
