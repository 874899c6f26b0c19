// Copyright 2026 The hmcts Authors
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

#include "hmcts/hmcts.hpp"

namespace {

using namespace hmcts;

void BM_ExactSolve(benchmark::State& state) {
  const DistanceMatrix dm(GenerateUniform(static_cast<int>(state.range(0)), 1), Metric::kEuc2dReal);
  for (auto _ : state) benchmark::DoNotOptimize(ExactSolve(dm));
}
BENCHMARK(BM_ExactSolve)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);

void BM_GenerateKoptMove(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DistanceMatrix dm(GenerateUniform(n, 2), Metric::kEuc2dReal);
  const RankTable ranks(dm);
  const auto hm = PriorToHeatmap(BuiltinPrior("tsp500"), ranks);
  MctsParams p;
  p.max_candidate_num = 5;
  MctsState s(dm, ranks, hm, p, 3);
  const Tour tour = SampleInitialTour(s);
  for (auto _ : state) benchmark::DoNotOptimize(GenerateKoptMove(s, tour));
}
BENCHMARK(BM_GenerateKoptMove)->Arg(100)->Arg(500)->Arg(1000);

void BM_SolveIterations(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DistanceMatrix dm(GenerateUniform(n, 4), Metric::kEuc2dReal);
  const RankTable ranks(dm);
  const auto hm = PriorToHeatmap(BuiltinPrior("tsp500"), ranks);
  MctsParams p;
  p.max_candidate_num = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Solve(dm, ranks, hm, p, 5, Budget::Iterations(1000)));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SolveIterations)->Arg(12)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_RankTable(benchmark::State& state) {
  const DistanceMatrix dm(GenerateUniform(static_cast<int>(state.range(0)), 6), Metric::kEuc2dReal);
  for (auto _ : state) benchmark::DoNotOptimize(RankTable(dm));
}
BENCHMARK(BM_RankTable)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
