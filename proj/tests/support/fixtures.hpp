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
#include <random>
#include <vector>

#include "rerf/dataset.hpp"
#include "rerf/random.hpp"

namespace rerf::testing {

inline Dataset make_dataset(Matrix x, Labels y) {
  Dataset d;
  d.features = std::move(x);
  d.labels = std::move(y);
  Label top = 0;
  for (Label c : d.labels) top = std::max(top, c);
  d.class_count = static_cast<std::size_t>(top) + 1;
  return d;
}

// 1-D points 0..n-1; the first half is class 0.
inline Dataset separable_1d(std::size_t n) {
  Matrix x(static_cast<Eigen::Index>(n), 1);
  Labels y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x(static_cast<Eigen::Index>(i), 0) = static_cast<double>(i);
    y[i] = i < n / 2 ? 0 : 1;
  }
  return make_dataset(std::move(x), std::move(y));
}

// Gaussian blobs at +-shift along every axis, alternating labels.
inline Dataset blobs(std::size_t n, std::size_t p, double shift, std::uint64_t seed,
                     std::size_t classes = 2) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  Labels y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = static_cast<Label>(i % classes);
    for (std::size_t j = 0; j < p; ++j) {
      const double centre = (j % classes == static_cast<std::size_t>(y[i])) ? shift : -shift;
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = centre + normal(rng);
    }
  }
  return make_dataset(std::move(x), std::move(y));
}

inline std::vector<std::uint32_t> all_rows(std::size_t n) {
  std::vector<std::uint32_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = static_cast<std::uint32_t>(i);
  return rows;
}

}  // namespace rerf::testing
