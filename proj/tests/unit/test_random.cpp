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

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "oracles.hpp"
#include "rerf/random.hpp"

namespace rerf {
namespace {

TEST(Random, DeriveSeedIsDeterministicAndSpreads) {
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 100; ++s) {
    for (std::uint64_t k = 0; k < 100; ++k) seen.insert(derive_seed(s, k));
  }
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(Random, SampleDistinctReturnsDistinctValuesInRange) {
  Rng rng(1);
  for (std::uint64_t universe : {1u, 5u, 64u, 1000u}) {
    for (std::uint64_t count : {std::uint64_t{0}, std::uint64_t{1}, universe / 3, universe}) {
      const auto v = sample_distinct(universe, count, rng);
      ASSERT_EQ(v.size(), count);
      std::set<std::uint64_t> s(v.begin(), v.end());
      EXPECT_EQ(s.size(), count);
      for (auto x : v) EXPECT_LT(x, universe);
    }
  }
}

TEST(Random, SampleDistinctRejectsOversizedCount) {
  Rng rng(1);
  EXPECT_ANY_THROW(sample_distinct(3, 4, rng));
}

// Both the dense (count large) and sparse (count small) paths are uniform.
TEST(Random, SampleDistinctInclusionIsUniform) {
  for (const auto [universe, count] : {std::pair<int, int>{10, 8}, {20, 2}}) {
    Rng rng(99);
    std::vector<double> hits(static_cast<std::size_t>(universe), 0.0);
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
      for (auto x : sample_distinct(universe, count, rng)) hits[x] += 1.0;
    }
    const double p = static_cast<double>(count) / universe;
    for (double h : hits) EXPECT_TRUE(testing::within_3sigma(h, draws, p)) << h;
  }
}

TEST(Random, UniformIndexCoversRange) {
  Rng rng(5);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[uniform_index(7, rng)];
  for (int h : hits) EXPECT_TRUE(testing::within_3sigma(h, 7000, 1.0 / 7));
}

}  // namespace
}  // namespace rerf
