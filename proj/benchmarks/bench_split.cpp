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

#include <random>

#include "rerf/random.hpp"
#include "rerf/split.hpp"

namespace {

void BM_BestSplit(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const auto d = static_cast<Eigen::Index>(state.range(1));
  rerf::Rng rng(1);
  std::normal_distribution<double> normal;
  rerf::Matrix x(n, d);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  rerf::Labels y(static_cast<std::size_t>(n));
  for (auto& c : y) c = static_cast<rerf::Label>(rng() % 2);
  for (auto _ : state) benchmark::DoNotOptimize(rerf::best_split(x, y, 10));
  state.SetItemsProcessed(state.iterations() * n * d);
}
BENCHMARK(BM_BestSplit)->Args({100, 10})->Args({1000, 10})->Args({1000, 50})->Args({10000, 10});

}  // namespace
