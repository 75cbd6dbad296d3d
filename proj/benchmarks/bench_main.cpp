// Copyright 2026 The pnf Authors
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

#include "pnf/fixtures.hpp"
#include "pnf/homological.hpp"
#include "pnf/normalform.hpp"
#include "pnf/uncouple.hpp"
#include "support.hpp"

using namespace pnf;

namespace {

void BM_Compose(benchmark::State& state) {
  const int deg = static_cast<int>(state.range(0));
  testing::Rng rng(1);
  const PolyMap v = testing::random_map(rng, 2, deg, 3, 3, 1.0, 3, 4);
  const PolyMap inner = testing::random_map(rng, 1, deg, 3, 3, 1.0, 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(compose(v, inner, deg));
}
BENCHMARK(BM_Compose)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_SolveCoupling(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SystemSpec sys = two_dof_forced_fixture();
  const EigenData eig = eigen_data(sys, Path::Uncouple);
  testing::Rng rng(2);
  const HomoPoly f = testing::random_homo(rng, n, sys.m0, sys.m1, sys.T, 4, 8, Codomain::E1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_coupling(f, sys, eig));
}
BENCHMARK(BM_SolveCoupling)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);

void BM_BuildPhi(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const SystemSpec sys = two_dof_forced_fixture();
  const EigenData eig = eigen_data(sys, Path::Uncouple);
  for (auto _ : state) benchmark::DoNotOptimize(build_phi(sys, eig, p));
}
BENCHMARK(BM_BuildPhi)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_Normalize(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const SystemSpec sys = hopf_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(normalize(sys, {.delta = 0.05, .p = p}));
}
BENCHMARK(BM_Normalize)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
