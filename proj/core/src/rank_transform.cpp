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

#include "rerf/rank_transform.hpp"

#include <algorithm>

#include "rerf/errors.hpp"

namespace rerf {

RankTransform RankTransform::fit(const Matrix& x) {
  if (x.rows() < 1) throw InvalidArgument("rank transform needs n >= 1");
  std::vector<std::vector<double>> sorted(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    auto& column = sorted[static_cast<std::size_t>(j)];
    column.assign(x.col(j).data(), x.col(j).data() + x.rows());
    std::sort(column.begin(), column.end());
  }
  return from_sorted_values(std::move(sorted));
}

RankTransform RankTransform::from_sorted_values(
    std::vector<std::vector<double>> sorted) {
  if (sorted.empty()) throw InvalidArgument("rank transform needs p >= 1");
  const std::size_t n = sorted.front().size();
  if (n == 0) throw InvalidArgument("rank transform needs n >= 1");
  for (const auto& column : sorted) {
    if (column.size() != n) {
      throw InvalidArgument("rank transform columns differ in length");
    }
    if (!std::is_sorted(column.begin(), column.end())) {
      throw InvalidArgument("rank transform columns must be sorted");
    }
  }
  RankTransform t;
  t.sorted_ = std::move(sorted);
  return t;
}

double RankTransform::apply_value(std::size_t dim, double value) const {
  const auto& column = sorted_.at(dim);
  const auto lo = std::lower_bound(column.begin(), column.end(), value);
  const auto hi = std::upper_bound(lo, column.end(), value);
  const auto below = static_cast<double>(lo - column.begin());
  const auto n = static_cast<double>(column.size());
  if (lo != hi) {
    // Average of ranks below+1 .. below+ties.
    const auto ties = static_cast<double>(hi - lo);
    return below + (ties + 1.0) / 2.0;
  }
  if (lo == column.begin()) return 1.0;
  if (lo == column.end()) return n;

  // Strictly between two training values: midpoint of their average ranks.
  const auto prev_lo = std::lower_bound(column.begin(), lo, *(lo - 1));
  const double prev_rank =
      static_cast<double>(prev_lo - column.begin()) +
      (static_cast<double>(lo - prev_lo) + 1.0) / 2.0;
  const auto next_hi = std::upper_bound(lo, column.end(), *lo);
  const double next_rank =
      below + (static_cast<double>(next_hi - lo) + 1.0) / 2.0;
  return (prev_rank + next_rank) / 2.0;
}

Matrix RankTransform::apply(const Matrix& x) const {
  if (static_cast<std::size_t>(x.cols()) != sorted_.size()) {
    throw InvalidArgument("rank transform fitted on " +
                          std::to_string(sorted_.size()) +
                          " dimensions, got " + std::to_string(x.cols()));
  }
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      out(i, j) = apply_value(static_cast<std::size_t>(j), x(i, j));
    }
  }
  return out;
}

}  // namespace rerf
