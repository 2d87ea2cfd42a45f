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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rerf/eval.hpp"
#include "rerf/simdata.hpp"

namespace rerf::tools {

struct SourceSpec {
  enum class Kind { kSparseParity, kTrunk, kCsv };
  Kind kind = Kind::kSparseParity;
  std::size_t n_train = 1000;
  std::size_t n_test = 1000;  // 0: evaluate by out-of-bag error
  std::vector<std::size_t> dims{20};
  std::size_t relevant = 3;
  double noise_sd = 0.25;
  std::filesystem::path train_csv;
  std::filesystem::path test_csv;  // optional for kCsv
};

struct AlgorithmSpec {
  std::string name;
  std::vector<std::size_t> d;  // empty: default_d_grid(p)
};

// Sweep description; the JSON keys mirror the CLI flags:
//   {"name": "...",
//    "source": {"generator": "sparse_parity"|"trunk", "n": 1000, "n_test": 1000,
//               "p": [10, 25], "relevant": 3, "noise_sd": 0.25}
//           | {"csv": "train.csv", "test_csv": "test.csv"},
//    "algorithms": ["rf", {"name": "rerf", "d": [1, 4]}],
//    "transforms": ["none", "rotate"], "trees": 100 | "auto",
//    "seeds": [1, 2], "min_node": 10, "rc_k": 3, "baseline": "rf",
//    "outlier_fraction": 0.2, "outlier_scale": 4, "out": "dir", "threads": 1}
struct ExperimentConfig {
  std::string name = "sweep";
  SourceSpec source;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<TransformKind> transforms{TransformKind::kNone};
  std::optional<std::size_t> trees;  // nullopt: default_tree_count(n)
  std::vector<std::uint64_t> seeds{0};
  std::size_t min_node_size = 10;
  std::size_t rc_nonzeros = 3;
  std::string baseline = "rf";
  double outlier_fraction = 0.2;
  double outlier_scale = 4.0;
  std::filesystem::path output_dir = "sweep_out";
  unsigned threads = 1;

  // Throws InvalidArgument naming the offending key.
  void validate() const;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct CellFailure {
  std::string algorithm;
  std::string dataset;
  std::size_t d = 0;
  std::string message;
};

// Seed-averaged view of one (algorithm, dataset group), where a group is a
// dataset instance with the seed dropped.
struct SummaryRow {
  std::string algorithm;
  std::string group;
  std::size_t seeds = 0;
  double mean_error = 0.0;
  double stderr_error = 0.0;
  double mean_relative_error = 0.0;  // vs the baseline; 0 without one
  double mean_train_seconds = 0.0;
};

struct SweepResult {
  ResultTable raw;   // every (algorithm, instance, d) cell
  ResultTable best;  // one row per (algorithm, instance)
  std::map<std::string, std::vector<CurvePoint>> curves;  // empty w/o baseline
  std::optional<PerformanceProfile> profile;  // needs >= 2 algorithms
  std::vector<SummaryRow> summary;
  std::vector<CellFailure> failures;
  std::map<std::string, std::string> group_of;  // instance -> group
};

// Runs the full cartesian product (source dims x transforms x seeds x
// algorithms x d). Cells of one dataset instance run in parallel on
// config.threads workers; every cell's randomness is derived from its seed,
// so all non-timing outputs are independent of the thread count.
SweepResult run_sweep(const ExperimentConfig& config);

// results_raw.csv, results.csv, curve.csv, profile.csv, profile_auc.csv,
// summary.csv, timing.csv and (when cells failed) failures.csv. Only the
// train_seconds columns and timing.csv carry wall-clock values.
void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& dir);

}  // namespace rerf::tools
