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

#include "rerf/random.hpp"

#include <unordered_set>

#include "rerf/errors.hpp"

namespace rerf {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t uniform_index(std::uint64_t bound, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
  return dist(rng);
}

std::vector<std::uint64_t> sample_distinct(std::uint64_t universe,
                                           std::uint64_t count, Rng& rng) {
  if (count > universe) {
    throw InvalidArgument("sample_distinct: cannot draw " +
                          std::to_string(count) + " distinct values from " +
                          std::to_string(universe));
  }
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (count == 0) return out;

  // Dense regime: partial Fisher-Yates over the whole universe.
  if (count * 4 >= universe) {
    std::vector<std::uint64_t> pool(universe);
    for (std::uint64_t i = 0; i < universe; ++i) pool[i] = i;
    for (std::uint64_t i = 0; i < count; ++i) {
      const std::uint64_t j = i + uniform_index(universe - i, rng);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

  // Sparse regime: rejection. Each accepted draw is uniform over the values
  // not yet taken, so the ordered sample has the same law as Fisher-Yates.
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(count * 2);
  while (out.size() < count) {
    const std::uint64_t v = uniform_index(universe, rng);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace rerf
