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

#include "bwecho/trace.hpp"

#include <cmath>

namespace bwecho {

FidelityCurve EvolutionTrace::fidelity_curve() const {
  return FidelityCurve{z_grid, fidelity};
}

EvolutionTrace trace_evolution(const EchoProtocol& protocol,
                               const InputState& input, int num_samples) {
  if (num_samples < 2) throw InvalidSpec("need at least two samples");
  if (!std::isfinite(protocol.segment_length) || protocol.segment_length < 0.0)
    throw InvalidSpec("segment length must be finite and >= 0");

  const Hamiltonian h1 = build_hamiltonian(protocol.spec);
  validate_input_state(input, h1.dim());
  Hamiltonian h2;
  if (protocol.reversal == ReversalMode::SublatticeExchange) {
    h2 = build_hamiltonian(flip_detuning(protocol.spec));
  } else {
    h2.matrix = -h1.matrix;
  }

  const SpectralDecomposition d1 = decompose(h1);
  const SpectralDecomposition d2 = decompose(h2);
  const double half = protocol.segment_length;
  const Unitary u1_full = propagate(d1, half);

  EvolutionTrace trace;
  trace.z_grid.resize(static_cast<std::size_t>(num_samples));
  trace.intensities.resize(num_samples, h1.dim());
  trace.fidelity.resize(static_cast<std::size_t>(num_samples));

  for (int i = 0; i < num_samples; ++i) {
    const double z = 2.0 * half * static_cast<double>(i) /
                     static_cast<double>(num_samples - 1);
    Unitary u = (z <= half)
                    ? propagate(d1, z)
                    : Unitary{propagate(d2, z - half).matrix * u1_full.matrix};
    trace.z_grid[static_cast<std::size_t>(i)] = z;
    trace.intensities.row(i) = mean_photon_numbers(u, input).transpose();
    trace.fidelity[static_cast<std::size_t>(i)] = fidelity(u, input);
  }
  return trace;
}

}  // namespace bwecho
