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

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "rerf/forest.hpp"
#include "rerf/matrix.hpp"

namespace rerf {

double misclassification_rate(std::span<const Label> predicted,
                              std::span<const Label> truth);

// One evaluated cell. `eval_count` is the number of points the error was
// measured on; it is only needed to break zero minimum errors in a
// performance profile and is not part of the CSV form.
struct ResultRow {
  std::string algorithm;
  std::string dataset;
  std::size_t d = 0;
  double error = 0.0;
  double train_seconds = 0.0;
  std::size_t eval_count = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

using ResultTable = std::vector<ResultRow>;

// One row per (algorithm, dataset): the d with the lowest error (ties to the
// smaller d). train_seconds becomes the mean over all d tried. Output is
// sorted by (algorithm, dataset).
ResultTable select_best_d(const ResultTable& raw);

struct CurvePoint {
  std::string dataset;
  double relative_error = 0.0;  // error - baseline error on the same dataset
};

// Per algorithm (including the baseline, whose curve is all zeros). Expects
// one row per (algorithm, dataset); throws InvalidArgument when the baseline
// is missing for a dataset or a cell is duplicated.
std::map<std::string, std::vector<CurvePoint>> relative_error_curve(
    const ResultTable& results, const std::string& baseline);

struct ProfilePoint {
  double tau = 1.0;
  double fraction = 0.0;
};

struct AlgorithmProfile {
  std::string algorithm;
  std::vector<double> ratios;        // per dataset, in dataset order
  std::vector<ProfilePoint> points;  // ECDF knots, tau ascending
  double auc = 0.0;
};

// Dolan-More profile over error ratios. A ratio is err / min error on that
// dataset. When the minimum is 0, ratios use eps = 1 / (2 * eval_count): 1
// for zero errors, (err + eps) / eps otherwise; such datasets are listed in
// zero_minimum_datasets. AUC is the ECDF area over [1, tau_max] divided by
// (tau_max - 1), or 1 when every ratio is 1.
struct PerformanceProfile {
  std::vector<AlgorithmProfile> algorithms;  // sorted by name
  std::vector<std::string> datasets;         // sorted
  double tau_max = 1.0;
  std::vector<std::string> zero_minimum_datasets;
};

PerformanceProfile performance_profile(const ResultTable& results);

// Fill value for the coordinates a posterior grid does not vary.
enum class FillRule { kMedian, kMean };
Vector fill_values(const Matrix& x, FillRule rule);

struct GridSpec {
  std::size_t dim_x = 0;
  std::size_t dim_y = 1;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  std::size_t resolution_x = 50;
  std::size_t resolution_y = 50;
  Vector fill;  // p values; dim_x and dim_y are overwritten per point
};

struct PosteriorGrid {
  Matrix points;     // (rx * ry) x p, x varies slowest
  Matrix posterior;  // (rx * ry) x C
};

Matrix grid_points(const GridSpec& spec);
PosteriorGrid posterior_grid(const Forest& forest, const GridSpec& spec,
                             unsigned threads = 1);

// Wall-clock seconds on a monotonic clock around fn(). Returns
// (result, seconds), or just seconds for void callables.
template <typename Fn>
auto timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  auto seconds = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  };
  if constexpr (std::is_void_v<std::invoke_result_t<Fn>>) {
    std::invoke(std::forward<Fn>(fn));
    return seconds();
  } else {
    auto result = std::invoke(std::forward<Fn>(fn));
    const double elapsed = seconds();
    return std::pair<decltype(result), double>(std::move(result), elapsed);
  }
}

// CSV forms. Headers are fixed:
//   results  algorithm,dataset,d,error,train_seconds
//   profile  algorithm,tau,fraction
//   auc      algorithm,auc
//   curve    algorithm,dataset,relative_error
//   grid     x,y,posterior_0..posterior_{C-1}
void write_results_csv(std::ostream& out, const ResultTable& table);
ResultTable read_results_csv(const std::filesystem::path& path);
void write_profile_csv(std::ostream& out, const PerformanceProfile& profile);
void write_auc_csv(std::ostream& out, const PerformanceProfile& profile);
void write_curve_csv(std::ostream& out,
                     const std::map<std::string, std::vector<CurvePoint>>& curves);
void write_posterior_grid_csv(std::ostream& out, const GridSpec& spec,
                              const PosteriorGrid& grid);

}  // namespace rerf
