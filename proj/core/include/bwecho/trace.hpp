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

#include <Eigen/Dense>

#include "bwecho/propagator.hpp"
#include "bwecho/states.hpp"

namespace bwecho {

// Sampled record of one echo run: mean photon number per site along z plus
// the instantaneous return fidelity.
struct EvolutionTrace {
  std::vector<double> z_grid;
  Eigen::MatrixXd intensities;   // num_samples x dim
  std::vector<double> fidelity;  // F(z) = |<psi(0)|psi(z)>|

  FidelityCurve fidelity_curve() const;
};

// Propagate `input` through both protocol segments, sampling `num_samples`
// points uniformly on [0, 2L] (num_samples >= 2; the endpoints are always
// included). For z <= L the propagator is U1(z); beyond the exchange it is
// U2(z - L) U1(L).
EvolutionTrace trace_evolution(const EchoProtocol& protocol,
                               const InputState& input, int num_samples);

}  // namespace bwecho
