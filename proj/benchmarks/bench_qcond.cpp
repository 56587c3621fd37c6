// Copyright 2026 The qcond Authors
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

#include <benchmark/benchmark.h>

#include "qcond/bayes.hpp"
#include "qcond/classify.hpp"
#include "qcond/spectral.hpp"

namespace {

using namespace qcond;

Channel make_channel(benchmark::State& state, Rng& rng) {
  const auto d = static_cast<std::size_t>(state.range(0));
  return random_channel(d, d, 2, rng);
}

void BM_PartialTrace(benchmark::State& state) {
  Rng rng(1);
  const auto d = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix rho = random_bipartite_state({d, d}, rng).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, {d, d}, Side::A));
}
BENCHMARK(BM_PartialTrace)->DenseRange(2, 4);

void BM_EigGeneral(benchmark::State& state) {
  Rng rng(2);
  const ComplexMatrix t = lambda_tau(make_channel(state, rng)).transfer();
  for (auto _ : state) benchmark::DoNotOptimize(eig_general(t));
}
BENCHMARK(BM_EigGeneral)->DenseRange(2, 4);

void BM_Classify(benchmark::State& state) {
  Rng rng(3);
  const Channel ch = make_channel(state, rng);
  for (auto _ : state) benchmark::DoNotOptimize(classify(ch));
}
BENCHMARK(BM_Classify)->DenseRange(2, 4);

void BM_Recovery(benchmark::State& state) {
  Rng rng(4);
  const Channel ch = make_channel(state, rng);
  const DensityOperator rho = random_density(ch.dim_in(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(recovery_channel(ch, rho));
}
BENCHMARK(BM_Recovery)->DenseRange(2, 4);

void BM_FixedPoint(benchmark::State& state) {
  Rng rng(5);
  const LinearMap m = lambda_tau(make_channel(state, rng));
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point(m));
}
BENCHMARK(BM_FixedPoint)->DenseRange(2, 4);

void BM_SpectralReport(benchmark::State& state) {
  Rng rng(6);
  const LinearMap m = lambda_tau(make_channel(state, rng));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_report(m));
}
BENCHMARK(BM_SpectralReport)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_DampingBasis(benchmark::State& state) {
  Rng rng(7);
  const LinearMap m = lambda_tau(make_channel(state, rng));
  for (auto _ : state) benchmark::DoNotOptimize(damping_basis(m));
}
BENCHMARK(BM_DampingBasis)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Broadcast(benchmark::State& state) {
  Rng rng(8);
  const Channel ch = make_channel(state, rng);
  for (auto _ : state) benchmark::DoNotOptimize(broadcast_state(ch));
}
BENCHMARK(BM_Broadcast)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
