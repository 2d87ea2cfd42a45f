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

#include "rerf/projection.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rerf/errors.hpp"

namespace rerf {

ProjectionMatrix::ProjectionMatrix(std::size_t rows, std::size_t cols,
                                   std::vector<ProjectionEntry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.row >= rows_ || e.col >= cols_) {
      throw InvalidArgument("projection entry (" + std::to_string(e.row) +
                            ", " + std::to_string(e.col) +
                            ") outside a " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " matrix");
    }
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const ProjectionEntry& a, const ProjectionEntry& b) {
              return a.col != b.col ? a.col < b.col : a.row < b.row;
            });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].col == entries_[i - 1].col &&
        entries_[i].row == entries_[i - 1].row) {
      throw InvalidArgument("duplicate projection cell (" +
                            std::to_string(entries_[i].row) + ", " +
                            std::to_string(entries_[i].col) + ")");
    }
  }
  col_start_.assign(cols_ + 1, 0);
  for (const auto& e : entries_) ++col_start_[e.col + 1];
  std::partial_sum(col_start_.begin(), col_start_.end(), col_start_.begin());
}

std::span<const ProjectionEntry> ProjectionMatrix::column(std::size_t j) const {
  if (j >= cols_) throw InvalidArgument("projection column out of range");
  return std::span<const ProjectionEntry>(entries_).subspan(
      col_start_[j], col_start_[j + 1] - col_start_[j]);
}

Matrix ProjectionMatrix::to_dense() const {
  Matrix dense = Matrix::Zero(static_cast<Eigen::Index>(rows_),
                              static_cast<Eigen::Index>(cols_));
  for (const auto& e : entries_) dense(e.row, e.col) = e.weight;
  return dense;
}

std::string to_string(ProjectionFamily family) {
  switch (family) {
    case ProjectionFamily::kAxisAligned:
      return "axis_aligned";
    case ProjectionFamily::kForestRC:
      return "forest_rc";
    case ProjectionFamily::kSparseTernary:
      return "sparse_ternary";
  }
  return "unknown";
}

ProjectionFamily projection_family_from_string(const std::string& name) {
  if (name == "axis_aligned") return ProjectionFamily::kAxisAligned;
  if (name == "forest_rc") return ProjectionFamily::kForestRC;
  if (name == "sparse_ternary") return ProjectionFamily::kSparseTernary;
  throw InvalidArgument("unknown projection family '" + name + "'");
}

ProjectionSpec ProjectionSpec::axis_aligned() {
  return {ProjectionFamily::kAxisAligned, 1, false, false};
}

ProjectionSpec ProjectionSpec::forest_rc(std::uint32_t k) {
  if (k == 0) throw InvalidArgument("Forest-RC needs k >= 1");
  return {ProjectionFamily::kForestRC, k, false, false};
}

ProjectionSpec ProjectionSpec::sparse_ternary() {
  return {ProjectionFamily::kSparseTernary, 1, false, false};
}

ProjectionSpec ProjectionSpec::per_tree_rotated(const ProjectionSpec& base) {
  if (base.per_tree_rotation) {
    throw InvalidArgument("per-tree rotation cannot wrap itself");
  }
  ProjectionSpec spec = base;
  spec.per_tree_rotation = true;
  return spec;
}

ProjectionSpec ProjectionSpec::mean_difference_augmented(
    const ProjectionSpec& base) {
  if (base.mean_difference) {
    throw InvalidArgument("mean-difference augmentation cannot wrap itself");
  }
  ProjectionSpec spec = base;
  spec.mean_difference = true;
  return spec;
}

void ProjectionSpec::validate(std::size_t p, std::size_t d) const {
  if (p == 0) throw InvalidArgument("projection needs p >= 1");
  if (d == 0) throw InvalidArgument("projection needs d >= 1");
  switch (family) {
    case ProjectionFamily::kAxisAligned:
      if (d > p) {
        throw InvalidArgument("axis-aligned projection needs d <= p (d=" +
                              std::to_string(d) + ", p=" + std::to_string(p) +
                              ")");
      }
      break;
    case ProjectionFamily::kForestRC:
      if (rc_nonzeros == 0 || rc_nonzeros > p) {
        throw InvalidArgument("Forest-RC needs 1 <= k <= p (k=" +
                              std::to_string(rc_nonzeros) +
                              ", p=" + std::to_string(p) + ")");
      }
      break;
    case ProjectionFamily::kSparseTernary:
      break;
  }
}

ProjectionMatrix sample_axis_aligned(std::size_t p, std::size_t d, Rng& rng) {
  ProjectionSpec::axis_aligned().validate(p, d);
  const auto rows = sample_distinct(p, d, rng);
  std::vector<ProjectionEntry> entries;
  entries.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    entries.push_back({static_cast<std::uint32_t>(rows[j]),
                       static_cast<std::uint32_t>(j), 1.0});
  }
  return ProjectionMatrix(p, d, std::move(entries));
}

ProjectionMatrix sample_forest_rc(std::size_t p, std::size_t d, std::size_t k,
                                  Rng& rng) {
  if (k == 0 || k > p) {
    throw InvalidArgument("Forest-RC needs 1 <= k <= p (k=" +
                          std::to_string(k) + ", p=" + std::to_string(p) + ")");
  }
  if (d == 0) throw InvalidArgument("projection needs d >= 1");
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::vector<ProjectionEntry> entries;
  entries.reserve(d * k);
  for (std::size_t j = 0; j < d; ++j) {
    // Columns are sampled independently of each other.
    for (const auto r : sample_distinct(p, k, rng)) {
      entries.push_back({static_cast<std::uint32_t>(r),
                         static_cast<std::uint32_t>(j), weight(rng)});
    }
  }
  return ProjectionMatrix(p, d, std::move(entries));
}

ProjectionMatrix sample_rerf(std::size_t p, std::size_t d, Rng& rng) {
  ProjectionSpec::sparse_ternary().validate(p, d);
  const auto cells = sample_distinct(static_cast<std::uint64_t>(p) * d, d, rng);
  std::bernoulli_distribution positive(0.5);
  std::vector<ProjectionEntry> entries;
  entries.reserve(d);
  for (const auto cell : cells) {
    entries.push_back({static_cast<std::uint32_t>(cell % p),
                       static_cast<std::uint32_t>(cell / p),
                       positive(rng) ? 1.0 : -1.0});
  }
  return ProjectionMatrix(p, d, std::move(entries));
}

ProjectionMatrix sample_projection(const ProjectionSpec& spec, std::size_t p,
                                   std::size_t d, Rng& rng) {
  switch (spec.family) {
    case ProjectionFamily::kAxisAligned:
      return sample_axis_aligned(p, d, rng);
    case ProjectionFamily::kForestRC:
      return sample_forest_rc(p, d, spec.rc_nonzeros, rng);
    case ProjectionFamily::kSparseTernary:
      return sample_rerf(p, d, rng);
  }
  throw InvalidArgument("unknown projection family");
}

Matrix sample_rotation(std::size_t p, Rng& rng) {
  if (p == 0) throw InvalidArgument("rotation needs p >= 1");
  const auto n = static_cast<Eigen::Index>(p);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

namespace {

template <typename RowList>
DeltaMatrix mean_difference_impl(const Matrix& x, std::span<const Label> y,
                                 const RowList& rows, std::size_t row_count) {
  const Eigen::Index p = x.cols();
  std::map<Label, std::size_t> counts;
  for (std::size_t k = 0; k < row_count; ++k) ++counts[y[rows(k)]];
  if (counts.size() < 2) {
    throw DegenerateInput(
        "mean-difference projections need at least two classes, got " +
        std::to_string(counts.size()));
  }

  DeltaMatrix delta;
  for (const auto& [label, count] : counts) delta.class_order.push_back(label);
  // Descending count; std::map iteration already gives ascending ids, and the
  // sort is stable, so equal counts stay in id order.
  std::stable_sort(delta.class_order.begin(), delta.class_order.end(),
                   [&](Label a, Label b) { return counts[a] > counts[b]; });

  std::map<Label, Eigen::Index> slot;
  for (std::size_t c = 0; c < delta.class_order.size(); ++c) {
    slot[delta.class_order[c]] = static_cast<Eigen::Index>(c);
  }
  Matrix sums = Matrix::Zero(p, static_cast<Eigen::Index>(counts.size()));
  for (std::size_t k = 0; k < row_count; ++k) {
    const std::size_t i = rows(k);
    sums.col(slot[y[i]]) += x.row(static_cast<Eigen::Index>(i)).transpose();
  }
  for (std::size_t c = 0; c < delta.class_order.size(); ++c) {
    sums.col(static_cast<Eigen::Index>(c)) /=
        static_cast<double>(counts[delta.class_order[c]]);
  }
  const Eigen::Index others = static_cast<Eigen::Index>(counts.size()) - 1;
  delta.columns.resize(p, others);
  for (Eigen::Index c = 0; c < others; ++c) {
    delta.columns.col(c) = sums.col(c + 1) - sums.col(0);
  }
  return delta;
}

void check_labels(const Matrix& x, std::span<const Label> y) {
  if (static_cast<std::size_t>(x.rows()) != y.size()) {
    throw InvalidArgument("feature rows (" + std::to_string(x.rows()) +
                          ") and labels (" + std::to_string(y.size()) +
                          ") differ");
  }
}

}  // namespace

DeltaMatrix mean_difference_projections(const Matrix& x,
                                        std::span<const Label> y) {
  check_labels(x, y);
  return mean_difference_impl(
      x, y, [](std::size_t k) { return k; }, y.size());
}

DeltaMatrix mean_difference_projections(const Matrix& x,
                                        std::span<const Label> y,
                                        std::span<const std::uint32_t> rows) {
  check_labels(x, y);
  for (const auto r : rows) {
    if (r >= y.size()) throw InvalidArgument("row index out of range");
  }
  return mean_difference_impl(
      x, y, [&](std::size_t k) { return static_cast<std::size_t>(rows[k]); },
      rows.size());
}

ProjectionMatrix augment_projection(const ProjectionMatrix& a,
                                    const DeltaMatrix& delta) {
  if (static_cast<std::size_t>(delta.columns.rows()) != a.rows()) {
    throw InvalidArgument("delta has " + std::to_string(delta.columns.rows()) +
                          " rows but A has " + std::to_string(a.rows()));
  }
  std::vector<ProjectionEntry> entries(a.entries().begin(), a.entries().end());
  const std::size_t extra = static_cast<std::size_t>(delta.columns.cols());
  for (std::size_t c = 0; c < extra; ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const double w = delta.columns(static_cast<Eigen::Index>(r),
                                     static_cast<Eigen::Index>(c));
      if (w != 0.0) {
        entries.push_back({static_cast<std::uint32_t>(r),
                           static_cast<std::uint32_t>(a.cols() + c), w});
      }
    }
  }
  return ProjectionMatrix(a.rows(), a.cols() + extra, std::move(entries));
}

Matrix project(const ProjectionMatrix& a, const Matrix& x) {
  if (static_cast<std::size_t>(x.cols()) != a.rows()) {
    throw InvalidArgument("cannot project " + std::to_string(x.cols()) +
                          "-column data with a " + std::to_string(a.rows()) +
                          "-row projection");
  }
  const Eigen::Index n = x.rows();
  Matrix out = Matrix::Zero(n, static_cast<Eigen::Index>(a.cols()));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto column = a.column(j);
    if (column.empty()) continue;
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, static_cast<Eigen::Index>(j)) = project_value(
          column, [&](std::uint32_t r) { return x(i, r); });
    }
  }
  return out;
}

}  // namespace rerf
