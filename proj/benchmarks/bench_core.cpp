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

#include <benchmark/benchmark.h>

#include "bwecho/effective_model.hpp"
#include "bwecho/propagator.hpp"
#include "bwecho/scenario.hpp"
#include "bwecho/states.hpp"
#include "bwecho/trace.hpp"

namespace {

using namespace bwecho;

void BM_BuildHamiltonianChain(benchmark::State& state) {
  const LatticeSpec spec =
      LatticeSpec::uniform_chain(static_cast<int>(state.range(0)), 1.0, 5.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_hamiltonian(spec).matrix.data());
}
BENCHMARK(BM_BuildHamiltonianChain)->Arg(10)->Arg(100)->Arg(1000);

void BM_Decompose(benchmark::State& state) {
  const Hamiltonian h = build_hamiltonian(
      LatticeSpec::uniform_chain(static_cast<int>(state.range(0)), 1.0, 5.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(decompose(h).eigenvalues.data());
}
BENCHMARK(BM_Decompose)->Arg(10)->Arg(70)->Arg(200);

void BM_EchoUnitaryChain(benchmark::State& state) {
  EchoProtocol protocol;
  protocol.spec =
      LatticeSpec::uniform_chain(static_cast<int>(state.range(0)), 1.0, 5.0);
  protocol.segment_length = 25.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(echo_unitary(protocol).matrix.data());
}
BENCHMARK(BM_EchoUnitaryChain)->Arg(10)->Arg(70);

void BM_Permanent(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = std::complex<double>(std::sin(i + j + 1.0),
                                     std::cos(i - j + 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(permanent(m));
}
BENCHMARK(BM_Permanent)->DenseRange(2, 8);

void BM_TraceEvolution(benchmark::State& state) {
  EchoProtocol protocol;
  protocol.spec = LatticeSpec::uniform_chain(10, 1.0, 5.0);
  protocol.segment_length = 25.0;
  const InputState input = FockState{3, 1};
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        trace_evolution(protocol, input, samples).fidelity.data());
}
BENCHMARK(BM_TraceEvolution)->Arg(51)->Arg(501);

void BM_DisorderedEnsemble(benchmark::State& state) {
  ScenarioConfig config = default_config("custom");
  config.lattice.disorder.sigma_max = 0.2;
  config.lattice.disorder.ensemble = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(run_scenario(config, 1).tables.size());
}
BENCHMARK(BM_DisorderedEnsemble)->Arg(10)->Arg(100);

void BM_EffectiveDeviation(benchmark::State& state) {
  const LatticeSpec spec = LatticeSpec::uniform_chain(10, 1.0, 10.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(effective_vs_exact_deviation(spec, 5.0, 101));
}
BENCHMARK(BM_EffectiveDeviation);

}  // namespace

BENCHMARK_MAIN();
