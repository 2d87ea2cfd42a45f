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
#include <optional>
#include <string>
#include <vector>

#include "rerf/generative_model.hpp"
#include "rerf/matrix.hpp"

namespace rerf {

// n x p features with integer labels in [0, class_count).
struct Dataset {
  Matrix features;
  Labels labels;
  std::size_t class_count = 0;
  // Display names of the class ids, in id order. May be empty, in which case
  // the ids themselves are the names.
  std::vector<std::string> class_names;
  // Set by the simulation generators.
  std::optional<GenerativeModel> source;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(features.rows());
  }
  std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(features.cols());
  }

  std::string class_name(Label id) const;

  // Throws InvalidArgument when a Dataset invariant is violated. `allow_empty`
  // admits n = 0 (prediction inputs).
  void validate(bool allow_empty = false) const;
};

// Row subset, keeping class metadata.
Dataset subset(const Dataset& data, const std::vector<std::size_t>& rows);

}  // namespace rerf
