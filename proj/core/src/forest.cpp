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

#include "rerf/forest.hpp"

#include <algorithm>
#include <limits>

#include "rerf/errors.hpp"
#include "rerf/parallel.hpp"
#include "rerf/random.hpp"

namespace rerf {

namespace {

constexpr std::size_t kRowBlock = 256;

void check_columns(const Forest& forest, const Matrix& x) {
  if (static_cast<std::size_t>(x.cols()) != forest.feature_count) {
    throw InvalidArgument("model expects " + std::to_string(forest.feature_count) +
                          " features, data has " + std::to_string(x.cols()));
  }
}

// Sums leaf posteriors of the selected trees per row. `use(tree, row)` decides
// whether a tree votes on a row. Trees are visited in order for every row, so
// the sums do not depend on the thread count.
template <typename Use>
Matrix accumulate(const Forest& forest, const RowMatrix& rows, unsigned threads,
                  const Use& use, std::vector<std::size_t>* votes) {
  const auto m = static_cast<std::size_t>(rows.rows());
  Matrix sums = Matrix::Zero(rows.rows(), static_cast<Eigen::Index>(forest.class_count));
  if (votes) votes->assign(m, 0);
  const std::size_t blocks = (m + kRowBlock - 1) / kRowBlock;
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t end = std::min(m, (b + 1) * kRowBlock);
    for (std::size_t i = b * kRowBlock; i < end; ++i) {
      const double* x = rows.row(static_cast<Eigen::Index>(i)).data();
      for (std::size_t t = 0; t < forest.trees.size(); ++t) {
        if (!use(t, i)) continue;
        const Tree& tree = forest.trees[t];
        const auto leaf = tree.leaf(tree.find_leaf(x));
        for (std::size_t c = 0; c < forest.class_count; ++c) {
          sums(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) +=
              leaf.posterior[c];
        }
        if (votes) ++(*votes)[i];
      }
    }
  });
  return sums;
}

}  // namespace

Matrix Forest::preprocess(const Matrix& x) const {
  return ranks ? ranks->apply(x) : x;
}

Forest fit(const Dataset& data, const TrainConfig& config, unsigned threads) {
  data.validate();
  config.validate(data.dimension());

  Forest forest;
  forest.config = config;
  forest.feature_count = data.dimension();
  forest.class_count = data.class_count;
  forest.class_names = data.class_names;

  const Dataset* train = &data;
  Dataset ranked;
  if (config.rank_transform) {
    forest.ranks = RankTransform::fit(data.features);
    ranked.features = forest.ranks->apply(data.features);
    ranked.labels = data.labels;
    ranked.class_count = data.class_count;
    train = &ranked;
  }

  const std::size_t n = data.size();
  forest.trees.resize(config.tree_count);
  parallel_for(config.tree_count, threads, [&](std::size_t l) {
    Rng rng(derive_seed(config.seed, l));
    std::vector<std::uint32_t> indices(n);
    if (config.bootstrap) {
      for (auto& i : indices) i = static_cast<std::uint32_t>(uniform_index(n, rng));
    } else {
      for (std::size_t i = 0; i < n; ++i) indices[i] = static_cast<std::uint32_t>(i);
    }
    forest.trees[l] = grow_tree(*train, indices, config, rng);
  });
  return forest;
}

Matrix predict_posterior(const Forest& forest, const Matrix& x, unsigned threads) {
  check_columns(forest, x);
  const RowMatrix rows = forest.preprocess(x);
  Matrix sums = accumulate(
      forest, rows, threads, [](std::size_t, std::size_t) { return true; }, nullptr);
  sums /= static_cast<double>(forest.trees.size());
  return sums;
}

Labels argmax_rows(const Matrix& posterior) {
  Labels out(static_cast<std::size_t>(posterior.rows()));
  for (Eigen::Index i = 0; i < posterior.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < posterior.cols(); ++c) {
      if (posterior(i, c) > posterior(i, best)) best = c;
    }
    out[static_cast<std::size_t>(i)] = static_cast<Label>(best);
  }
  return out;
}

Labels predict(const Forest& forest, const Matrix& x, unsigned threads) {
  return argmax_rows(predict_posterior(forest, x, threads));
}

std::vector<std::vector<std::size_t>> leaf_indices(const Forest& forest,
                                                   const Matrix& x) {
  check_columns(forest, x);
  const RowMatrix rows = forest.preprocess(x);
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    auto& leaves = out[static_cast<std::size_t>(i)];
    leaves.reserve(forest.trees.size());
    for (const auto& tree : forest.trees) {
      leaves.push_back(tree.find_leaf(rows.row(i).data()));
    }
  }
  return out;
}

OobResult oob_evaluate(const Forest& forest, const Dataset& data, unsigned threads) {
  if (!forest.config.bootstrap) {
    throw UnsupportedOperation("out-of-bag error needs a bootstrapped forest");
  }
  check_columns(forest, data.features);
  if (data.labels.size() != data.size()) {
    throw InvalidArgument("dataset labels do not match its rows");
  }
  const std::size_t n = data.size();
  std::vector<std::vector<bool>> in_bag(forest.trees.size(), std::vector<bool>(n, false));
  for (std::size_t t = 0; t < forest.trees.size(); ++t) {
    for (const auto i : forest.trees[t].in_bag) {
      if (i >= n) {
        throw InvalidArgument("forest was trained on a larger dataset than the one given");
      }
      in_bag[t][i] = true;
    }
  }
  const RowMatrix rows = forest.preprocess(data.features);
  std::vector<std::size_t> votes;
  OobResult result;
  result.posterior = accumulate(
      forest, rows, threads,
      [&](std::size_t t, std::size_t i) { return !in_bag[t][i]; }, &votes);

  std::size_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (votes[i] == 0) continue;
    ++result.covered;
    result.posterior.row(static_cast<Eigen::Index>(i)) /= static_cast<double>(votes[i]);
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < result.posterior.cols(); ++c) {
      if (result.posterior(static_cast<Eigen::Index>(i), c) >
          result.posterior(static_cast<Eigen::Index>(i), best)) {
        best = c;
      }
    }
    if (static_cast<Label>(best) != data.labels[i]) ++wrong;
  }
  result.error = result.covered == 0
                     ? std::numeric_limits<double>::quiet_NaN()
                     : static_cast<double>(wrong) / static_cast<double>(result.covered);
  return result;
}

double oob_error(const Forest& forest, const Dataset& data, unsigned threads) {
  return oob_evaluate(forest, data, threads).error;
}

}  // namespace rerf
