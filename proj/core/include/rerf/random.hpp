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

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rerf {

// All sampling in the library goes through this engine. Every consumer takes
// it by reference, so callers own reproducibility.
using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

// Seed for the `stream`-th child of `seed` (per-tree, per-cell, ...).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

// `count` distinct integers from [0, universe), each ordered sample equally
// likely. Requires count <= universe.
std::vector<std::uint64_t> sample_distinct(std::uint64_t universe,
                                           std::uint64_t count, Rng& rng);

// Uniform integer in [0, bound).
std::uint64_t uniform_index(std::uint64_t bound, Rng& rng);

}  // namespace rerf
