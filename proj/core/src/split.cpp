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

#include "rerf/split.hpp"

#include <algorithm>
#include <numeric>

#include "rerf/errors.hpp"

namespace rerf {

double gini_impurity(std::span<const std::size_t> class_counts) {
  const std::size_t total =
      std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0});
  if (total == 0) throw InvalidArgument("gini_impurity: all counts are zero");
  const double n = static_cast<double>(total);
  double sum = 0.0;
  for (const auto c : class_counts) {
    const double f = static_cast<double>(c) / n;
    sum += f * f;
  }
  return 1.0 - sum;
}

SplitScanner::SplitScanner(std::size_t class_count)
    : class_count_(class_count),
      parent_counts_(class_count),
      left_(class_count),
      right_(class_count) {}

void SplitScanner::reset(std::span<const Label> labels) {
  labels_ = labels;
  std::fill(parent_counts_.begin(), parent_counts_.end(), 0);
  for (const auto y : labels) {
    if (y < 0 || static_cast<std::size_t>(y) >= class_count_) {
      throw InvalidArgument("label " + std::to_string(y) + " outside [0, " +
                            std::to_string(class_count_) + ")");
    }
    ++parent_counts_[static_cast<std::size_t>(y)];
  }
  parent_square_sum_ = 0;
  for (const auto c : parent_counts_) {
    parent_square_sum_ += static_cast<std::int64_t>(c) * static_cast<std::int64_t>(c);
  }
  has_best_ = false;
  best_num_ = 0;
  best_den_ = 1;
}

void SplitScanner::offer(std::size_t column, std::span<const double> values) {
  const std::size_t n = labels_.size();
  if (values.size() != n) {
    throw InvalidArgument("split scan: value count differs from label count");
  }
  if (n < 2) return;

  items_.resize(n);
  for (std::size_t i = 0; i < n; ++i) items_[i] = {values[i], labels_[i]};
  std::sort(items_.begin(), items_.end(),
            [](const Item& a, const Item& b) { return a.value < b.value; });
  if (!(items_.front().value < items_.back().value)) return;  // constant

  std::fill(left_.begin(), left_.end(), 0);
  for (std::size_t c = 0; c < class_count_; ++c) {
    right_[c] = static_cast<std::int64_t>(parent_counts_[c]);
  }
  std::int64_t left_sq = 0;
  std::int64_t right_sq = parent_square_sum_;
  const auto total = static_cast<std::int64_t>(n);
  const WideInt parent_num = parent_square_sum_;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto y = static_cast<std::size_t>(items_[i].label);
    left_sq += 2 * left_[y] + 1;
    ++left_[y];
    right_sq -= 2 * right_[y] - 1;
    --right_[y];
    if (!(items_[i].value < items_[i + 1].value)) continue;

    const auto n_left = static_cast<std::int64_t>(i + 1);
    const auto n_right = total - n_left;
    const WideInt num = static_cast<WideInt>(left_sq) * n_right +
                         static_cast<WideInt>(right_sq) * n_left;
    const WideInt den = static_cast<WideInt>(n_left) * n_right;
    // Strict decrease: num / den > parent_sq / n.
    if (!(num * total > parent_num * den)) continue;
    if (has_best_ && !(num * best_den_ > best_num_ * den)) continue;

    const double lo = items_[i].value;
    const double hi = items_[i + 1].value;
    double threshold = std::midpoint(lo, hi);
    if (!(threshold < hi)) threshold = lo;

    has_best_ = true;
    best_column_ = column;
    best_threshold_ = threshold;
    best_num_ = num;
    best_den_ = den;
  }
}

std::optional<SplitResult> SplitScanner::best() const {
  if (!has_best_) return std::nullopt;
  const double n = static_cast<double>(labels_.size());
  const double score =
      static_cast<double>(best_num_) / static_cast<double>(best_den_);
  const double parent = static_cast<double>(parent_square_sum_) / n;
  return SplitResult{best_column_, best_threshold_, (score - parent) / n};
}

std::optional<SplitResult> best_split(const Matrix& projected,
                                      std::span<const Label> labels,
                                      std::size_t min_node_size) {
  if (static_cast<std::size_t>(projected.rows()) != labels.size()) {
    throw InvalidArgument("best_split: " + std::to_string(projected.rows()) +
                          " projected rows but " +
                          std::to_string(labels.size()) + " labels");
  }
  if (labels.empty() || labels.size() < min_node_size) return std::nullopt;
  const Label max_label = *std::max_element(labels.begin(), labels.end());
  SplitScanner scanner(static_cast<std::size_t>(std::max<Label>(max_label, 0)) + 1);
  scanner.reset(labels);
  std::vector<double> column(labels.size());
  for (Eigen::Index j = 0; j < projected.cols(); ++j) {
    for (Eigen::Index i = 0; i < projected.rows(); ++i) {
      column[static_cast<std::size_t>(i)] = projected(i, j);
    }
    scanner.offer(static_cast<std::size_t>(j), column);
  }
  return scanner.best();
}

}  // namespace rerf
