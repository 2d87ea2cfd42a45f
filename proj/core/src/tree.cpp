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

#include "rerf/tree.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rerf/errors.hpp"
#include "rerf/projection.hpp"
#include "rerf/split.hpp"

namespace rerf {

void TrainConfig::validate(std::size_t p) const {
  if (tree_count < 1) throw InvalidArgument("tree_count must be >= 1");
  if (candidate_count < 1) throw InvalidArgument("candidate_count must be >= 1");
  if (min_node_size < 2) throw InvalidArgument("min_node_size must be >= 2");
  projection.validate(p, candidate_count);
}

double dot(const double* a, const double* b, std::size_t n) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(),
                    [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t Tree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::size_t> level(nodes.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (!nodes[i].is_leaf()) {
      level[static_cast<std::size_t>(nodes[i].left)] = level[i] + 1;
      level[static_cast<std::size_t>(nodes[i].right)] = level[i] + 1;
    }
  }
  return deepest;
}

SplitView Tree::split(std::size_t node) const {
  const TreeNode& n = nodes.at(node);
  if (n.is_leaf()) throw InvalidArgument("node is a leaf");
  return {std::span<const DirectionEntry>(directions).subspan(n.offset, n.length),
          n.threshold, n.left, n.right};
}

LeafView Tree::leaf(std::size_t node) const {
  const TreeNode& n = nodes.at(node);
  if (!n.is_leaf()) throw InvalidArgument("node is not a leaf");
  return {std::span<const double>(posteriors).subspan(n.offset, class_count),
          n.length};
}

std::size_t Tree::find_leaf(const double* x) const {
  std::size_t at = 0;
  const auto p = static_cast<std::size_t>(rotation.cols());
  while (!nodes[at].is_leaf()) {
    const TreeNode& n = nodes[at];
    const auto direction =
        std::span<const DirectionEntry>(directions).subspan(n.offset, n.length);
    double value;
    if (rotated()) {
      value = 0.0;
      for (const auto& e : direction) {
        value += e.weight * dot(rotation.row(e.index).data(), x, p);
      }
    } else {
      value = 0.0;
      for (const auto& e : direction) value += e.weight * x[e.index];
    }
    at = static_cast<std::size_t>(value > n.threshold ? n.right : n.left);
  }
  return at;
}

void Tree::validate(std::size_t feature_count) const {
  if (nodes.empty()) throw InvalidArgument("tree has no nodes");
  if (class_count < 1) throw InvalidArgument("tree has class_count 0");
  if (rotated() && (static_cast<std::size_t>(rotation.rows()) != feature_count ||
                    static_cast<std::size_t>(rotation.cols()) != feature_count)) {
    throw InvalidArgument("tree rotation is not p x p");
  }
  std::vector<int> parents(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const TreeNode& n = nodes[i];
    if (n.is_leaf()) {
      if (n.right >= 0) throw InvalidArgument("leaf with a right child");
      if (static_cast<std::size_t>(n.offset) + class_count > posteriors.size()) {
        throw InvalidArgument("leaf posterior out of range");
      }
      if (n.length < 1) throw InvalidArgument("leaf with zero training count");
      double sum = 0.0;
      for (std::size_t c = 0; c < class_count; ++c) {
        const double v = posteriors[n.offset + c];
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("posterior outside [0, 1]");
        sum += v;
      }
      if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("posterior does not sum to 1");
      continue;
    }
    const auto l = static_cast<std::size_t>(n.left);
    const auto r = static_cast<std::size_t>(n.right);
    if (n.right < 0 || l <= i || r <= i || l >= nodes.size() || r >= nodes.size()) {
      throw InvalidArgument("split node " + std::to_string(i) +
                            " has invalid children");
    }
    ++parents[l];
    ++parents[r];
    if (n.length < 1 ||
        static_cast<std::size_t>(n.offset) + n.length > directions.size()) {
      throw InvalidArgument("split direction out of range");
    }
    for (std::uint32_t k = 0; k < n.length; ++k) {
      if (directions[n.offset + k].index >= feature_count) {
        throw InvalidArgument("split direction index out of range");
      }
    }
    if (!std::isfinite(n.threshold)) throw InvalidArgument("non-finite threshold");
  }
  if (parents[0] != 0) throw InvalidArgument("root has a parent");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (parents[i] != 1) throw InvalidArgument("node " + std::to_string(i) +
                                               " does not have exactly one parent");
  }
}

namespace {

class TreeGrower {
 public:
  TreeGrower(const Matrix& x, std::span<const Label> y, std::size_t class_count,
             const TrainConfig& config, Rng& rng)
      : x_(x),
        y_(y),
        class_count_(class_count),
        config_(config),
        rng_(rng),
        scanner_(class_count) {}

  void grow(Tree& tree, std::vector<std::uint32_t> samples) {
    samples_ = std::move(samples);
    tree.class_count = class_count_;
    tree.nodes.assign(1, TreeNode{});

    struct Pending {
      std::size_t node;
      std::size_t begin;
      std::size_t end;
      std::size_t depth;
    };
    std::vector<Pending> stack{{0, 0, samples_.size(), 0}};
    while (!stack.empty()) {
      const Pending job = stack.back();
      stack.pop_back();
      const auto split = try_split(job.begin, job.end, job.depth);
      if (!split) {
        make_leaf(tree, job.node, job.begin, job.end);
        continue;
      }
      const std::size_t mid = partition(job.begin, job.end, *split);
      const auto left = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.resize(tree.nodes.size() + 2);
      TreeNode& node = tree.nodes[job.node];
      node.left = left;
      node.right = left + 1;
      node.threshold = split->threshold;
      node.offset = static_cast<std::uint32_t>(tree.directions.size());
      node.length = static_cast<std::uint32_t>(split->direction.size());
      for (const auto& e : split->direction) {
        tree.directions.push_back({e.row, e.weight});
      }
      stack.push_back({static_cast<std::size_t>(left) + 1, mid, job.end, job.depth + 1});
      stack.push_back({static_cast<std::size_t>(left), job.begin, mid, job.depth + 1});
    }
  }

 private:
  struct ChosenSplit {
    std::vector<ProjectionEntry> direction;
    double threshold;
  };

  double value_of(std::span<const ProjectionEntry> column, std::uint32_t row) const {
    const double* base = x_.data();
    const auto n = static_cast<std::size_t>(x_.rows());
    return project_value(column, [&](std::uint32_t r) {
      return base[static_cast<std::size_t>(r) * n + row];
    });
  }

  std::optional<ChosenSplit> try_split(std::size_t begin, std::size_t end,
                                       std::size_t depth) {
    const std::size_t count = end - begin;
    if (count < config_.min_node_size) return std::nullopt;
    if (config_.max_depth && depth >= *config_.max_depth) return std::nullopt;

    labels_.resize(count);
    for (std::size_t i = 0; i < count; ++i) labels_[i] = y_[samples_[begin + i]];
    const Label first = labels_.front();
    if (std::all_of(labels_.begin(), labels_.end(),
                    [&](Label l) { return l == first; })) {
      return std::nullopt;
    }

    const auto p = static_cast<std::size_t>(x_.cols());
    ProjectionMatrix a =
        sample_projection(config_.projection, p, config_.candidate_count, rng_);
    if (config_.projection.mean_difference) {
      const auto rows = std::span<const std::uint32_t>(samples_).subspan(begin, count);
      a = augment_projection(a, mean_difference_projections(x_, y_, rows));
    }

    scanner_.reset(labels_);
    values_.resize(count);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto column = a.column(j);
      if (column.empty()) continue;
      for (std::size_t i = 0; i < count; ++i) {
        values_[i] = value_of(column, samples_[begin + i]);
      }
      scanner_.offer(j, values_);
    }
    const auto best = scanner_.best();
    if (!best) return std::nullopt;
    const auto column = a.column(best->column);
    return ChosenSplit{{column.begin(), column.end()}, best->threshold};
  }

  std::size_t partition(std::size_t begin, std::size_t end, const ChosenSplit& split) {
    const auto first = samples_.begin() + static_cast<std::ptrdiff_t>(begin);
    const auto last = samples_.begin() + static_cast<std::ptrdiff_t>(end);
    const auto mid = std::stable_partition(first, last, [&](std::uint32_t row) {
      return !(value_of(split.direction, row) > split.threshold);
    });
    return static_cast<std::size_t>(mid - samples_.begin());
  }

  void make_leaf(Tree& tree, std::size_t node, std::size_t begin, std::size_t end) {
    TreeNode& n = tree.nodes[node];
    n.left = -1;
    n.right = -1;
    n.offset = static_cast<std::uint32_t>(tree.posteriors.size());
    n.length = static_cast<std::uint32_t>(end - begin);
    std::vector<std::size_t> counts(class_count_, 0);
    for (std::size_t i = begin; i < end; ++i) {
      ++counts[static_cast<std::size_t>(y_[samples_[i]])];
    }
    const double total = static_cast<double>(end - begin);
    for (const auto c : counts) {
      tree.posteriors.push_back(static_cast<double>(c) / total);
    }
  }

  const Matrix& x_;
  std::span<const Label> y_;
  std::size_t class_count_;
  const TrainConfig& config_;
  Rng& rng_;
  SplitScanner scanner_;
  std::vector<std::uint32_t> samples_;
  Labels labels_;
  std::vector<double> values_;
};

// Rotated copy of `x` (n x p, column-major): out(i, k) = dot(Q_k, x_i).
Matrix rotate_rows(const Matrix& x, const RowMatrix& q) {
  const RowMatrix rows = x;
  const auto p = static_cast<std::size_t>(x.cols());
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < x.cols(); ++k) {
      out(i, k) = dot(q.row(k).data(), rows.row(i).data(), p);
    }
  }
  return out;
}

}  // namespace

Tree grow_tree(const Dataset& data, std::span<const std::uint32_t> indices,
               const TrainConfig& config, Rng& rng) {
  if (indices.empty()) throw InvalidArgument("grow_tree needs a nonempty sample");
  const std::size_t p = data.dimension();
  config.validate(p);
  for (const auto i : indices) {
    if (i >= data.size()) throw InvalidArgument("grow_tree: row index out of range");
  }

  Tree tree;
  tree.in_bag.assign(indices.begin(), indices.end());
  std::sort(tree.in_bag.begin(), tree.in_bag.end());
  tree.in_bag.erase(std::unique(tree.in_bag.begin(), tree.in_bag.end()),
                    tree.in_bag.end());

  std::vector<std::uint32_t> samples(indices.begin(), indices.end());
  if (config.projection.per_tree_rotation) {
    tree.rotation = sample_rotation(p, rng);
    const Matrix rotated = rotate_rows(data.features, tree.rotation);
    TreeGrower(rotated, data.labels, data.class_count, config, rng)
        .grow(tree, std::move(samples));
  } else {
    TreeGrower(data.features, data.labels, data.class_count, config, rng)
        .grow(tree, std::move(samples));
  }
  return tree;
}

}  // namespace rerf
