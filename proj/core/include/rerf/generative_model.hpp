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
#include <variant>

namespace rerf {

// Noisy parity restricted to the first `relevant` coordinates: mean bits are
// Bernoulli(1/2) in {0, 1}, features add N(0, noise_sd^2) per coordinate.
struct SparseParityConfig {
  std::size_t n = 1000;
  std::size_t p = 20;
  std::size_t relevant = 3;
  double noise_sd = 0.25;

  void validate() const;
  friend bool operator==(const SparseParityConfig&,
                         const SparseParityConfig&) = default;
};

// Two identity-covariance Gaussians at +mu and -mu, mu_i = 1 / sqrt(i).
struct TrunkConfig {
  std::size_t n = 100;
  std::size_t p = 10;

  void validate() const;
  friend bool operator==(const TrunkConfig&, const TrunkConfig&) = default;
};

// Which generator produced a dataset; required to draw outliers from it.
using GenerativeModel = std::variant<SparseParityConfig, TrunkConfig>;

}  // namespace rerf
