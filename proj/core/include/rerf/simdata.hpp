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

#include <cstdint>
#include <string>

#include "rerf/dataset.hpp"
#include "rerf/generative_model.hpp"
#include "rerf/matrix.hpp"
#include "rerf/random.hpp"

namespace rerf {

Dataset gen_sparse_parity(const SparseParityConfig& config, Rng& rng);
Dataset gen_trunk(const TrunkConfig& config, Rng& rng);

// (1, 1/sqrt(2), ..., 1/sqrt(p)); class 0 is centred at +mu, class 1 at -mu.
Vector trunk_mean(std::size_t p);

// Appends round(fraction * n) points drawn from the dataset's generator with
// every class covariance multiplied by `scale`. Each outlier's class is drawn
// uniformly. Throws UnsupportedOperation for datasets without a generator.
Dataset add_outliers(const Dataset& data, double fraction, double scale, Rng& rng);

enum class TransformKind { kNone, kRotation, kScaling, kAffine, kOutliers };

std::string to_string(TransformKind kind);
TransformKind transform_kind_from_string(const std::string& name);

struct TransformSpec {
  TransformKind kind = TransformKind::kNone;
  std::uint64_t seed = 0;
  double outlier_fraction = 0.2;
  double outlier_scale = 4.0;

  void validate() const;
};

// A transform with its random draws fixed, so the same map can be applied to
// a training and a test set. Rotation uses Q drawn from derive_seed(seed, 1),
// scaling uses factors drawn from derive_seed(seed, 2); affine applies both,
// rotation first.
struct FittedTransform {
  TransformKind kind = TransformKind::kNone;
  Matrix rotation;  // p x p, empty unless rotation/affine
  Vector scales;    // p, empty unless scaling/affine

  Matrix apply(const Matrix& x) const;
};

// Outliers have no feature map; fitting them yields the identity.
FittedTransform fit_transform(const TransformSpec& spec, std::size_t p);

// Features are transformed, labels never change. Outlier specs append points
// drawn with an engine seeded from spec.seed.
Dataset apply_transform(const Dataset& data, const TransformSpec& spec);

}  // namespace rerf
