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

#include "rerf/simdata.hpp"

#include <cmath>

#include "rerf/errors.hpp"
#include "rerf/projection.hpp"

namespace rerf {

namespace {

// Fills row `i` with a sparse-parity point whose mean bits are drawn (or
// forced to the requested class) and returns its label.
Label draw_parity_row(Matrix& x, Eigen::Index i, std::size_t relevant, double sd,
                      int forced_class, Rng& rng) {
  std::bernoulli_distribution bit(0.5);
  std::normal_distribution<double> noise(0.0, sd);
  const Eigen::Index p = x.cols();
  std::vector<int> bits(static_cast<std::size_t>(p));
  int parity = 0;
  for (Eigen::Index j = 0; j < p; ++j) {
    bits[static_cast<std::size_t>(j)] = bit(rng) ? 1 : 0;
    if (static_cast<std::size_t>(j) < relevant) parity ^= bits[static_cast<std::size_t>(j)];
  }
  if (forced_class >= 0 && parity != forced_class) {
    bits[0] ^= 1;
    parity ^= 1;
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    x(i, j) = static_cast<double>(bits[static_cast<std::size_t>(j)]) + noise(rng);
  }
  return static_cast<Label>(parity);
}

}  // namespace

Dataset gen_sparse_parity(const SparseParityConfig& config, Rng& rng) {
  config.validate();
  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(config.n),
                       static_cast<Eigen::Index>(config.p));
  data.labels.resize(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    data.labels[i] = draw_parity_row(data.features, static_cast<Eigen::Index>(i),
                                     config.relevant, config.noise_sd, -1, rng);
  }
  data.class_count = 2;
  data.source = config;
  return data;
}

Vector trunk_mean(std::size_t p) {
  Vector mu(static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    mu(static_cast<Eigen::Index>(i)) = 1.0 / std::sqrt(static_cast<double>(i + 1));
  }
  return mu;
}

Dataset gen_trunk(const TrunkConfig& config, Rng& rng) {
  config.validate();
  const Vector mu = trunk_mean(config.p);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(config.n),
                       static_cast<Eigen::Index>(config.p));
  data.labels.resize(config.n);
  // Classes alternate so that any prefix is balanced.
  for (std::size_t i = 0; i < config.n; ++i) {
    const Label y = static_cast<Label>(i % 2);
    const double sign = y == 0 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < config.p; ++j) {
      data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          sign * mu(static_cast<Eigen::Index>(j)) + normal(rng);
    }
    data.labels[i] = y;
  }
  data.class_count = 2;
  data.source = config;
  return data;
}

Dataset add_outliers(const Dataset& data, double fraction, double scale, Rng& rng) {
  if (!data.source) {
    throw UnsupportedOperation(
        "outliers need the generating model; this dataset has none (CSV input?)");
  }
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("outlier fraction must be in [0, 1]");
  }
  if (!(scale > 0.0)) throw InvalidArgument("outlier scale must be positive");
  const auto extra = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(data.size())));
  if (extra == 0) return data;

  Dataset out = data;
  const Eigen::Index n = data.features.rows();
  const Eigen::Index p = data.features.cols();
  out.features.conservativeResize(n + static_cast<Eigen::Index>(extra), p);
  out.labels.resize(data.size() + extra);
  std::bernoulli_distribution coin(0.5);
  const double spread = std::sqrt(scale);

  if (const auto* parity = std::get_if<SparseParityConfig>(&*data.source)) {
    for (std::size_t k = 0; k < extra; ++k) {
      const int cls = coin(rng) ? 1 : 0;
      const auto i = n + static_cast<Eigen::Index>(k);
      out.labels[data.size() + k] = draw_parity_row(
          out.features, i, parity->relevant, parity->noise_sd * spread, cls, rng);
    }
  } else {
    const Vector mu = trunk_mean(static_cast<std::size_t>(p));
    std::normal_distribution<double> normal(0.0, spread);
    for (std::size_t k = 0; k < extra; ++k) {
      const Label cls = coin(rng) ? 1 : 0;
      const double sign = cls == 0 ? 1.0 : -1.0;
      const auto i = n + static_cast<Eigen::Index>(k);
      for (Eigen::Index j = 0; j < p; ++j) {
        out.features(i, j) = sign * mu(j) + normal(rng);
      }
      out.labels[data.size() + k] = cls;
    }
  }
  return out;
}

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::kNone: return "none";
    case TransformKind::kRotation: return "rotate";
    case TransformKind::kScaling: return "scale";
    case TransformKind::kAffine: return "affine";
    case TransformKind::kOutliers: return "outliers";
  }
  return "unknown";
}

TransformKind transform_kind_from_string(const std::string& name) {
  if (name == "none") return TransformKind::kNone;
  if (name == "rotate" || name == "rotation") return TransformKind::kRotation;
  if (name == "scale" || name == "scaling") return TransformKind::kScaling;
  if (name == "affine") return TransformKind::kAffine;
  if (name == "outliers") return TransformKind::kOutliers;
  throw InvalidArgument("unknown transform '" + name + "'");
}

void TransformSpec::validate() const {
  if (kind == TransformKind::kOutliers) {
    if (!(outlier_scale > 1.0)) throw InvalidArgument("outlier scale must exceed 1");
    if (!(outlier_fraction >= 0.0 && outlier_fraction <= 1.0)) {
      throw InvalidArgument("outlier fraction must be in [0, 1]");
    }
  }
}

FittedTransform fit_transform(const TransformSpec& spec, std::size_t p) {
  spec.validate();
  FittedTransform t;
  t.kind = spec.kind;
  const bool rotate =
      spec.kind == TransformKind::kRotation || spec.kind == TransformKind::kAffine;
  const bool scale =
      spec.kind == TransformKind::kScaling || spec.kind == TransformKind::kAffine;
  if (rotate) {
    Rng rng(derive_seed(spec.seed, 1));
    t.rotation = sample_rotation(p, rng);
  }
  if (scale) {
    Rng rng(derive_seed(spec.seed, 2));
    std::uniform_real_distribution<double> factor(0.0, 10.0);
    t.scales.resize(static_cast<Eigen::Index>(p));
    for (Eigen::Index j = 0; j < t.scales.size(); ++j) {
      double s = 0.0;
      while (s == 0.0) s = factor(rng);
      t.scales(j) = s;
    }
  }
  return t;
}

Matrix FittedTransform::apply(const Matrix& x) const {
  Matrix out = x;
  if (rotation.size() > 0) {
    if (rotation.cols() != x.cols()) {
      throw InvalidArgument("transform fitted for a different dimension");
    }
    out = out * rotation.transpose();
  }
  if (scales.size() > 0) {
    if (scales.size() != x.cols()) {
      throw InvalidArgument("transform fitted for a different dimension");
    }
    out = out * scales.asDiagonal();
  }
  return out;
}

Dataset apply_transform(const Dataset& data, const TransformSpec& spec) {
  spec.validate();
  if (spec.kind == TransformKind::kNone) return data;
  if (spec.kind == TransformKind::kOutliers) {
    Rng rng(derive_seed(spec.seed, 3));
    return add_outliers(data, spec.outlier_fraction, spec.outlier_scale, rng);
  }
  Dataset out = data;
  out.features = fit_transform(spec, data.dimension()).apply(data.features);
  return out;
}

}  // namespace rerf
