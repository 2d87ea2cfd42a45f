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

#include <cstddef>
#include <cstdint>
#include <optional>

#include "rerf/projection.hpp"

namespace rerf {

struct TrainConfig {
  std::size_t tree_count = 500;       // L
  std::size_t candidate_count = 1;    // d, columns of each sampled A
  ProjectionSpec projection = ProjectionSpec::sparse_ternary();
  std::size_t min_node_size = 10;     // nodes smaller than this become leaves
  std::optional<std::size_t> max_depth;
  bool bootstrap = true;
  bool rank_transform = false;
  std::uint64_t seed = 0;

  // Throws InvalidArgument if the config cannot train on p features.
  void validate(std::size_t p) const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

}  // namespace rerf
