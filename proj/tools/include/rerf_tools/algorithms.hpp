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
#include <string>
#include <vector>

#include "rerf/train_config.hpp"

namespace rerf::tools {

// CLI algorithm names: rf, rc, rerf, rerf-r, rerf-d, rerf-dr, rotrf.
const std::vector<std::string>& algorithm_names();

// Projection family and rank flag for a named algorithm; the other fields of
// `base` are kept. Throws InvalidArgument for unknown names.
TrainConfig configure_algorithm(const std::string& name, TrainConfig base,
                                std::size_t rc_nonzeros = 3);

// d values tried per algorithm: all of 1..p when p <= 5, otherwise
// {1, p^(1/4), p^(1/2), p^(3/4), p} rounded to the nearest integer and
// deduplicated.
std::vector<std::size_t> default_d_grid(std::size_t p);

// 1000 trees for n <= 1000, otherwise 500.
std::size_t default_tree_count(std::size_t n);

}  // namespace rerf::tools
