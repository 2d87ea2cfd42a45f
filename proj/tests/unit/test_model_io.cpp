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

#include <cstring>
#include <filesystem>

#include "fixtures.hpp"
#include "rerf/errors.hpp"
#include "rerf/forest.hpp"
#include "rerf/model_io.hpp"

namespace rerf {
namespace {

Forest trained(ProjectionSpec spec, bool ranks) {
  Dataset data = testing::blobs(120, 4, 0.5, 21, 3);
  data.class_names = {"a", "b", "c"};
  TrainConfig c;
  c.projection = spec;
  c.tree_count = 6;
  c.candidate_count = 3;
  c.rank_transform = ranks;
  c.max_depth = 12;
  c.seed = 4;
  return fit(data, c);
}

TEST(ModelIo, RoundTripPreservesEverything) {
  for (const auto& [spec, ranks] :
       {std::pair{ProjectionSpec::sparse_ternary(), false},
        std::pair{ProjectionSpec::per_tree_rotated(ProjectionSpec::axis_aligned()), true},
        std::pair{ProjectionSpec::mean_difference_augmented(ProjectionSpec::forest_rc(2)), true}}) {
    const Forest f = trained(spec, ranks);
    const std::string bytes = serialize_model(f);
    const Forest g = deserialize_model(bytes);
    EXPECT_EQ(f, g);
    EXPECT_EQ(serialize_model(g), bytes);
  }
}

TEST(ModelIo, FileRoundTrip) {
  const Forest f = trained(ProjectionSpec::sparse_ternary(), false);
  const auto path = std::filesystem::temp_directory_path() / "rerf_model_io_test.bin";
  save_model(f, path);
  EXPECT_EQ(load_model(path), f);
  std::filesystem::remove(path);
}

TEST(ModelIo, MissingFileIsAnIoError) {
  EXPECT_THROW(load_model("/nonexistent/model.bin"), IoError);
  const Forest f = trained(ProjectionSpec::sparse_ternary(), false);
  EXPECT_THROW(save_model(f, "/nonexistent/dir/model.bin"), IoError);
}

TEST(ModelIo, CorruptionIsAParseError) {
  const std::string bytes = serialize_model(trained(ProjectionSpec::sparse_ternary(), true));
  EXPECT_THROW(deserialize_model(""), ParseError);
  EXPECT_THROW(deserialize_model("RERFMODX" + bytes.substr(8)), ParseError);
  for (std::size_t cut : {std::size_t{10}, bytes.size() / 2, bytes.size() - 1}) {
    EXPECT_THROW(deserialize_model(bytes.substr(0, cut)), ParseError) << cut;
  }
  EXPECT_THROW(deserialize_model(bytes + "x"), ParseError);
}

TEST(ModelIo, UnknownVersionIsNamed) {
  std::string bytes = serialize_model(trained(ProjectionSpec::sparse_ternary(), false));
  const std::uint32_t v = kModelFormatVersion + 1;
  std::memcpy(bytes.data() + 8, &v, sizeof v);
  try {
    deserialize_model(bytes);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
}

// Flipping bytes anywhere must never crash or load an invalid forest.
TEST(ModelIo, ByteFlipsNeverYieldInvalidForests) {
  const Forest f = trained(ProjectionSpec::sparse_ternary(), false);
  const std::string bytes = serialize_model(f);
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::string copy = bytes;
    const std::size_t at = uniform_index(copy.size(), rng);
    copy[at] = static_cast<char>(copy[at] ^ static_cast<char>(1 + uniform_index(255, rng)));
    try {
      const Forest g = deserialize_model(copy);
      for (const auto& t : g.trees) EXPECT_NO_THROW(t.validate(g.feature_count));
    } catch (const ParseError&) {
    }
  }
}

}  // namespace
}  // namespace rerf
