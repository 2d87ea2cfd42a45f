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
#include <span>
#include <string>
#include <vector>

#include "rerf/matrix.hpp"
#include "rerf/random.hpp"

namespace rerf {

struct ProjectionEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  double weight = 0.0;

  friend bool operator==(const ProjectionEntry&,
                         const ProjectionEntry&) = default;
};

// Sparse p x d matrix A. Entries are kept sorted by (col, row) so that each
// column is a contiguous run; the summation order of a column is therefore
// fixed, and training and prediction compute identical projected values.
//
// Columns may be empty. Duplicate columns are allowed.
class ProjectionMatrix {
 public:
  ProjectionMatrix() = default;

  // Throws InvalidArgument on out-of-range indices or duplicate cells.
  ProjectionMatrix(std::size_t rows, std::size_t cols,
                   std::vector<ProjectionEntry> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  std::span<const ProjectionEntry> entries() const noexcept {
    return entries_;
  }
  std::span<const ProjectionEntry> column(std::size_t j) const;

  Matrix to_dense() const;

  friend bool operator==(const ProjectionMatrix&,
                         const ProjectionMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ProjectionEntry> entries_;
  std::vector<std::size_t> col_start_;
};

enum class ProjectionFamily : std::uint8_t {
  kAxisAligned,    // Forest-IC: one coordinate per column, weight 1
  kForestRC,       // Forest-RC: k coordinates per column, U[-1, 1] weights
  kSparseTernary,  // RerF: d cells of the p x d grid, weights +-1
};

std::string to_string(ProjectionFamily family);
ProjectionFamily projection_family_from_string(const std::string& name);

// Distribution f_A. The wrappers (per-tree rotation, mean-difference
// augmentation) each apply at most once on top of one base family.
struct ProjectionSpec {
  ProjectionFamily family = ProjectionFamily::kSparseTernary;
  std::uint32_t rc_nonzeros = 3;  // k, only read for kForestRC
  bool per_tree_rotation = false;
  bool mean_difference = false;

  static ProjectionSpec axis_aligned();
  static ProjectionSpec forest_rc(std::uint32_t k);
  static ProjectionSpec sparse_ternary();
  static ProjectionSpec per_tree_rotated(const ProjectionSpec& base);
  static ProjectionSpec mean_difference_augmented(const ProjectionSpec& base);

  // Throws InvalidArgument if this spec cannot produce a p x d matrix.
  void validate(std::size_t p, std::size_t d) const;

  friend bool operator==(const ProjectionSpec&,
                         const ProjectionSpec&) = default;
};

ProjectionMatrix sample_axis_aligned(std::size_t p, std::size_t d, Rng& rng);
ProjectionMatrix sample_forest_rc(std::size_t p, std::size_t d, std::size_t k,
                                  Rng& rng);
ProjectionMatrix sample_rerf(std::size_t p, std::size_t d, Rng& rng);

// Draws from the spec's base family; wrappers are applied by the tree grower.
ProjectionMatrix sample_projection(const ProjectionSpec& spec, std::size_t p,
                                   std::size_t d, Rng& rng);

// Haar-distributed p x p orthogonal matrix (Gaussian -> QR -> fix the signs
// of R's diagonal).
Matrix sample_rotation(std::size_t p, Rng& rng);

struct DeltaMatrix {
  Matrix columns;            // p x (C - 1)
  std::vector<Label> class_order;  // observed classes, largest first
};

// Class-conditional mean differences against the largest class (ties to the
// smallest class id). Throws DegenerateInput with fewer than two classes.
DeltaMatrix mean_difference_projections(const Matrix& x, std::span<const Label> y);

// Same, restricted to the rows listed in `rows` (duplicates count).
DeltaMatrix mean_difference_projections(const Matrix& x, std::span<const Label> y,
                                        std::span<const std::uint32_t> rows);

// [A | delta]; zero weights in delta are not stored.
ProjectionMatrix augment_projection(const ProjectionMatrix& a,
                                    const DeltaMatrix& delta);

// X * A, n x d. Costs O(n * nnz(A)).
Matrix project(const ProjectionMatrix& a, const Matrix& x);

// Projected value of one column for one sample given as a strided row.
// Shared by training and prediction so both round identically.
template <typename RowAccess>
double project_value(std::span<const ProjectionEntry> column,
                     const RowAccess& value_at) {
  double acc = 0.0;
  for (const auto& e : column) acc += e.weight * value_at(e.row);
  return acc;
}

}  // namespace rerf
