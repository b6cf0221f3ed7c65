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
#include <random>

#include <Eigen/Dense>
#include <Eigen/QR>

namespace bwecho_testing {

// Haar-ish random unitary: QR of a complex Gaussian matrix. Good enough for
// exercising the closed forms against the brute-force reference.
inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      g(i, j) = std::complex<double>(normal(gen), normal(gen));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

inline Eigen::VectorXcd random_amplitudes(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i)
    v[i] = std::complex<double>(normal(gen), normal(gen));
  return v;
}

inline double max_deviation_from_identity(const Eigen::MatrixXcd& m) {
  return (m - Eigen::MatrixXcd::Identity(m.rows(), m.cols()))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace bwecho_testing
