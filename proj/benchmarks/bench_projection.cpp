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

#include "rerf/projection.hpp"

namespace {

void BM_SampleRerf(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(std::sqrt(static_cast<double>(p)));
  rerf::Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(rerf::sample_rerf(p, d, rng));
}
BENCHMARK(BM_SampleRerf)->Arg(10)->Arg(100)->Arg(1000);

void BM_Project(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(std::sqrt(static_cast<double>(p)));
  rerf::Rng rng(3);
  const rerf::Matrix x = rerf::Matrix::Random(1000, static_cast<Eigen::Index>(p));
  const rerf::ProjectionMatrix a = rerf::sample_rerf(p, d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rerf::project(a, x));
}
BENCHMARK(BM_Project)->Arg(10)->Arg(100)->Arg(1000);

void BM_SampleRotation(benchmark::State& state) {
  rerf::Rng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rerf::sample_rotation(static_cast<std::size_t>(state.range(0)), rng));
  }
}
BENCHMARK(BM_SampleRotation)->Arg(10)->Arg(100)->Arg(500);

}  // namespace
