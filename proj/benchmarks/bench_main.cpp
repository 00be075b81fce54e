// Copyright 2026 The cdcg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <numbers>

#include <benchmark/benchmark.h>

#include "cdcg/error_model.hpp"
#include "cdcg/group.hpp"
#include "cdcg/simulate.hpp"
#include "cdcg/synthesis.hpp"

namespace {

using namespace cdcg;

const GateSpec kQ({1.0, 0.0, 0.0}, 2.0 * std::numbers::pi / 3.0);

Operator bath_hamiltonian(int n_bath) {
  SpinBathSpec spec;
  spec.n_bath = n_bath;
  return assemble(spec).h_e;
}

void BM_Matexp(benchmark::State& state) {
  const Operator h = bath_hamiltonian(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(matexp(h, 1e-3));
  state.SetLabel(std::to_string(h.dim()) + "x" + std::to_string(h.dim()));
}
BENCHMARK(BM_Matexp)->DenseRange(1, 5);

void BM_EulerianCycle(benchmark::State& state) {
  const DecouplingGroup g = pauli_group();
  for (auto _ : state) benchmark::DoNotOptimize(eulerian_cycle(g));
}
BENCHMARK(BM_EulerianCycle);

void BM_SynthesizeAndFlatten(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Synthesizer synth(pauli_group());
    benchmark::DoNotOptimize(flatten(*synth.build(kQ, level), 1.0, 1e-4));
  }
}
BENCHMARK(BM_SynthesizeAndFlatten)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_RunSchedule(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const Operator h = bath_hamiltonian(3);
  Synthesizer synth(pauli_group());
  const Schedule s = flatten(*synth.build(kQ, level), 1.0, 1e-4);
  for (auto _ : state) benchmark::DoNotOptimize(run_schedule(s, h));
  state.counters["segments"] = static_cast<double>(s.segments.size());
}
BENCHMARK(BM_RunSchedule)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  const Operator h = bath_hamiltonian(3);
  Synthesizer synth(pauli_group());
  SimulationConfig cfg;
  cfg.schedule = flatten(*synth.build(kQ, 2), 1.0, 1e-4);
  cfg.h_e = h;
  cfg.target = kQ;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(cfg));
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
