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

#include "rerf_tools/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rerf/errors.hpp"

namespace rerf::tools {

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"rf",     "rc",      "rerf", "rerf-r",
                                              "rerf-d", "rerf-dr", "rotrf"};
  return names;
}

TrainConfig configure_algorithm(const std::string& name, TrainConfig base,
                                std::size_t rc_nonzeros) {
  base.rank_transform = false;
  if (name == "rf") {
    base.projection = ProjectionSpec::axis_aligned();
  } else if (name == "rc") {
    base.projection = ProjectionSpec::forest_rc(static_cast<std::uint32_t>(rc_nonzeros));
  } else if (name == "rerf") {
    base.projection = ProjectionSpec::sparse_ternary();
  } else if (name == "rerf-r") {
    base.projection = ProjectionSpec::sparse_ternary();
    base.rank_transform = true;
  } else if (name == "rerf-d") {
    base.projection =
        ProjectionSpec::mean_difference_augmented(ProjectionSpec::sparse_ternary());
  } else if (name == "rerf-dr") {
    base.projection =
        ProjectionSpec::mean_difference_augmented(ProjectionSpec::sparse_ternary());
    base.rank_transform = true;
  } else if (name == "rotrf") {
    base.projection = ProjectionSpec::per_tree_rotated(ProjectionSpec::axis_aligned());
  } else {
    throw InvalidArgument("unknown algorithm '" + name +
                          "' (expected rf|rc|rerf|rerf-r|rerf-d|rerf-dr|rotrf)");
  }
  return base;
}

std::vector<std::size_t> default_d_grid(std::size_t p) {
  if (p == 0) throw InvalidArgument("d grid needs p >= 1");
  std::set<std::size_t> grid;
  if (p <= 5) {
    for (std::size_t d = 1; d <= p; ++d) grid.insert(d);
  } else {
    for (const double e : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      grid.insert(static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(p), e))));
    }
  }
  return {grid.begin(), grid.end()};
}

std::size_t default_tree_count(std::size_t n) { return n <= 1000 ? 1000 : 500; }

}  // namespace rerf::tools
