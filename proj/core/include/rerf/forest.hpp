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

#include "rerf/dataset.hpp"
#include "rerf/matrix.hpp"
#include "rerf/rank_transform.hpp"
#include "rerf/train_config.hpp"
#include "rerf/tree.hpp"

namespace rerf {

// A trained random projection forest. Immutable after fit(); safe to query
// from several threads.
struct Forest {
  TrainConfig config;
  std::size_t feature_count = 0;
  std::size_t class_count = 0;
  std::vector<std::string> class_names;
  std::optional<RankTransform> ranks;  // set iff config.rank_transform
  std::vector<Tree> trees;

  // Maps raw inputs into the space the trees were grown in.
  Matrix preprocess(const Matrix& x) const;

  friend bool operator==(const Forest&, const Forest&) = default;
};

// Trains config.tree_count trees. Tree l draws from an engine seeded with
// derive_seed(config.seed, l), so the result does not depend on `threads`.
Forest fit(const Dataset& data, const TrainConfig& config, unsigned threads = 1);

// Average of leaf posteriors over all trees, m x C.
Matrix predict_posterior(const Forest& forest, const Matrix& x,
                         unsigned threads = 1);

// Argmax of predict_posterior; ties go to the smaller class id.
Labels predict(const Forest& forest, const Matrix& x, unsigned threads = 1);
Labels argmax_rows(const Matrix& posterior);

// Leaf reached by every row in every tree, m x L (row-major by sample).
std::vector<std::vector<std::size_t>> leaf_indices(const Forest& forest,
                                                   const Matrix& x);

struct OobResult {
  double error = 0.0;       // NaN when no row is ever out of bag
  std::size_t covered = 0;  // rows left out by at least one tree
  Matrix posterior;         // rows that were never out of bag are zero
};

// Out-of-bag evaluation on the training set. Throws UnsupportedOperation if
// the forest was trained without bootstrap.
OobResult oob_evaluate(const Forest& forest, const Dataset& data,
                       unsigned threads = 1);
double oob_error(const Forest& forest, const Dataset& data, unsigned threads = 1);

}  // namespace rerf
