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
#include <vector>

#include "rerf/matrix.hpp"

namespace rerf {

// Per-dimension "pass to ranks" map fitted on training data.
//
// A training value maps to its 1-based average rank (ties averaged). A value
// strictly between two neighbouring training values maps to the midpoint of
// their ranks; values outside the training range clamp to 1 or n. The image
// of any point depends only on how its coordinates order against the training
// values, so every downstream computation is invariant under strictly
// increasing per-dimension maps.
class RankTransform {
 public:
  RankTransform() = default;

  static RankTransform fit(const Matrix& x);

  Matrix apply(const Matrix& x) const;
  double apply_value(std::size_t dim, double value) const;

  std::size_t dimensions() const noexcept { return sorted_.size(); }
  std::size_t sample_count() const noexcept {
    return sorted_.empty() ? 0 : sorted_.front().size();
  }
  const std::vector<std::vector<double>>& sorted_values() const noexcept {
    return sorted_;
  }

  static RankTransform from_sorted_values(std::vector<std::vector<double>> sorted);

  friend bool operator==(const RankTransform&, const RankTransform&) = default;

 private:
  std::vector<std::vector<double>> sorted_;
};

}  // namespace rerf
