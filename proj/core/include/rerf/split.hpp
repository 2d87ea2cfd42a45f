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
#include <span>
#include <vector>

#include "rerf/matrix.hpp"

namespace rerf {

__extension__ typedef __int128 WideInt;

// 1 - sum_c (n_c / n)^2. Throws InvalidArgument when all counts are zero.
double gini_impurity(std::span<const std::size_t> class_counts);

struct SplitResult {
  std::size_t column = 0;
  double threshold = 0.0;
  double decrease = 0.0;  // parent Gini minus count-weighted child Gini
};

// Exhaustive CART search over the columns of a projected node matrix
// (n_k x d). Candidate thresholds are midpoints of consecutive distinct
// values; samples with value > threshold go right. Ties in decrease go to the
// lower column, then the lower threshold. Returns nullopt when n_k <
// min_node_size or no split strictly decreases impurity.
std::optional<SplitResult> best_split(const Matrix& projected,
                                      std::span<const Label> labels,
                                      std::size_t min_node_size);

// Incremental form of best_split used by the tree grower: columns are offered
// one at a time, in column order, so the projected matrix is never
// materialized. Decreases are compared exactly in integer arithmetic.
class SplitScanner {
 public:
  explicit SplitScanner(std::size_t class_count);

  // Starts a node. `labels` must outlive the subsequent offer() calls.
  void reset(std::span<const Label> labels);

  // `values[i]` is the projected value of the i-th label passed to reset().
  void offer(std::size_t column, std::span<const double> values);

  std::optional<SplitResult> best() const;

  std::span<const std::size_t> parent_counts() const { return parent_counts_; }

 private:
  struct Item {
    double value;
    Label label;
  };

  std::size_t class_count_;
  std::span<const Label> labels_;
  std::vector<std::size_t> parent_counts_;
  std::int64_t parent_square_sum_ = 0;
  std::vector<Item> items_;
  std::vector<std::int64_t> left_;
  std::vector<std::int64_t> right_;

  bool has_best_ = false;
  std::size_t best_column_ = 0;
  double best_threshold_ = 0.0;
  // Best score sum_L^2 / n_L + sum_R^2 / n_R held as numerator / denominator.
  WideInt best_num_ = 0;
  WideInt best_den_ = 1;
};

}  // namespace rerf
