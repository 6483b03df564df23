// Copyright 2026 The entmap Authors
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

#include <cstdint>

#include "entmap/experiment.hpp"
#include "entmap/gateerr.hpp"
#include "entmap/recon.hpp"

namespace {

using namespace entmap;

const HamiltonianParams kReference{1.2, 0.6, 1.4};

void BM_Evolve(benchmark::State& state) {
  const PureState psi = prepare_input({InputState::kPsi3, 0.0});
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(evolve(kReference, psi, t));
  }
}
BENCHMARK(BM_Evolve);

void BM_OracleEvolve(benchmark::State& state) {
  const PureState psi = prepare_input({InputState::kPsi3, 0.0});
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(oracle_evolve(kReference, psi, t));
  }
}
BENCHMARK(BM_OracleEvolve);

void BM_SimulateSampled(benchmark::State& state) {
  const auto plan = plan_observation(0.6, static_cast<std::size_t>(state.range(0)), 10, Strategy::kUniform);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_series(kReference, InputState::kPsi1, plan, 0.0, Mode::kSampled, ++seed));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSampled)->Arg(200)->Arg(2048);

void BM_Dft(benchmark::State& state) {
  const auto plan = plan_observation(0.6, static_cast<std::size_t>(state.range(0)), 10, Strategy::kUniform);
  const auto series = simulate_series(kReference, InputState::kPsi1, plan, 0.0, Mode::kSampled, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft(series));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dft)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_RefineUniform(benchmark::State& state) {
  const auto plan = plan_observation(0.6, 200, 10, Strategy::kUniform);
  const auto series = simulate_series(kReference, InputState::kPsi1, plan, 0.0, Mode::kSampled, 1);
  const double coarse = find_peak(dft(series))->omega;
  for (auto _ : state) benchmark::DoNotOptimize(refine_frequency(series, coarse, plan));
}
BENCHMARK(BM_RefineUniform);

void BM_RefineEndpoint(benchmark::State& state) {
  const auto plan = plan_observation(0.6, 10, static_cast<std::uint64_t>(state.range(0)), Strategy::kEndpoint);
  const auto series = simulate_series(kReference, InputState::kPsi1, plan, 0.0, Mode::kSampled, 1);
  for (auto _ : state) benchmark::DoNotOptimize(refine_frequency(series, 2.4, plan));
}
BENCHMARK(BM_RefineEndpoint)->Arg(16)->Arg(1024);

void BM_Characterize(benchmark::State& state) {
  std::array<SamplingPlan, 4> plans;
  for (InputState s : kAllInputs)
    plans[index_of(s)] = plan_observation(std::abs(combination(s, kReference)), 200, 10, Strategy::kUniform);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(characterize(kReference, plans, ++seed));
}
BENCHMARK(BM_Characterize);

void BM_ThresholdSolve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(measurements_for_threshold(1e-4, 10));
}
BENCHMARK(BM_ThresholdSolve);

}  // namespace

BENCHMARK_MAIN();
