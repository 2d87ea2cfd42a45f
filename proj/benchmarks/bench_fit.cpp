/*
 * Copyright 2026 The RerF Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <cmath>
#include <string>

#include "rerf/forest.hpp"
#include "rerf/simdata.hpp"

namespace {

rerf::ProjectionSpec family(int which) {
  switch (which) {
    case 0: return rerf::ProjectionSpec::axis_aligned();
    case 1: return rerf::ProjectionSpec::sparse_ternary();
    default: return rerf::ProjectionSpec::per_tree_rotated(rerf::ProjectionSpec::axis_aligned());
  }
}

// Args: family (0 rf, 1 rerf, 2 rotrf), p.
void BM_FitTrunk(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(1));
  rerf::Rng rng(5);
  const rerf::Dataset data = rerf::gen_trunk({100, p}, rng);
  rerf::TrainConfig c;
  c.projection = family(static_cast<int>(state.range(0)));
  c.tree_count = 20;
  c.candidate_count = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(p))));
  for (auto _ : state) benchmark::DoNotOptimize(rerf::fit(data, c, 1));
  state.SetLabel(state.range(0) == 0 ? "rf" : state.range(0) == 1 ? "rerf" : "rotrf");
}
BENCHMARK(BM_FitTrunk)
    ->ArgsProduct({{0, 1, 2}, {10, 100, 500}})
    ->Unit(benchmark::kMillisecond);

void BM_FitSparseParity(benchmark::State& state) {
  rerf::Rng rng(6);
  const rerf::Dataset data = rerf::gen_sparse_parity({1000, 20, 3, 0.25}, rng);
  rerf::TrainConfig c;
  c.projection = family(static_cast<int>(state.range(0)));
  c.tree_count = 10;
  c.candidate_count = 4;
  for (auto _ : state) benchmark::DoNotOptimize(rerf::fit(data, c, 1));
}
BENCHMARK(BM_FitSparseParity)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace
