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
#include <vector>

#include "rerf/dataset.hpp"
#include "rerf/matrix.hpp"
#include "rerf/random.hpp"
#include "rerf/train_config.hpp"

namespace rerf {

// One (index, weight) term of a split direction. For rotated trees the index
// refers to a coordinate of the rotated space.
struct DirectionEntry {
  std::uint32_t index = 0;
  double weight = 0.0;

  friend bool operator==(const DirectionEntry&, const DirectionEntry&) = default;
};

// Flat node record. A node is a leaf iff left < 0.
//   split: directions[offset, offset + length) is the direction, threshold t*;
//          samples with projection > t* go right.
//   leaf:  posteriors[offset, offset + class_count) is the class posterior,
//          length is the training count n_k.
struct TreeNode {
  std::int32_t left = -1;
  std::int32_t right = -1;
  double threshold = 0.0;
  std::uint32_t offset = 0;
  std::uint32_t length = 0;

  bool is_leaf() const noexcept { return left < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct SplitView {
  std::span<const DirectionEntry> direction;
  double threshold;
  std::int32_t left;
  std::int32_t right;
};

struct LeafView {
  std::span<const double> posterior;
  std::size_t training_count;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::vector<DirectionEntry> directions;
  std::vector<double> posteriors;
  std::size_t class_count = 0;
  // Per-tree rotation Q (p x p) applied as x -> Q x before descending; empty
  // when the tree is grown in the input space.
  RowMatrix rotation;
  // Sorted distinct training rows drawn for this tree.
  std::vector<std::uint32_t> in_bag;

  bool rotated() const noexcept { return rotation.size() > 0; }
  std::size_t leaf_count() const;
  std::size_t depth() const;

  SplitView split(std::size_t node) const;
  LeafView leaf(std::size_t node) const;

  // Index of the leaf reached by a point given as p contiguous values in the
  // tree's input space (after any rank transform, before rotation).
  std::size_t find_leaf(const double* x) const;

  // Throws InvalidArgument on structural violations: bad
  // child indices, children not after their parent, dangling ranges,
  // posteriors that do not sum to one.
  void validate(std::size_t feature_count) const;

  friend bool operator==(const Tree&, const Tree&) = default;
};

// Plain left-to-right dot product. Rotated coordinates are always computed
// through this so training and prediction agree bit for bit.
double dot(const double* a, const double* b, std::size_t n) noexcept;

// Grows one tree on data.features rows listed in `indices` (duplicates
// allowed). Draws the per-tree rotation first when the projection asks for
// one. `in_bag` of the result is the distinct set of `indices`.
Tree grow_tree(const Dataset& data, std::span<const std::uint32_t> indices,
               const TrainConfig& config, Rng& rng);

}  // namespace rerf
