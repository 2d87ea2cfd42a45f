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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Seeds are fixed so every run sees the same data.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rerf/eval.hpp"
#include "rerf/forest.hpp"
#include "rerf/simdata.hpp"
#include "rerf/split.hpp"
#include "rerf_tools/algorithms.hpp"
#include "rerf_tools/experiment.hpp"

namespace fs = std::filesystem;
using namespace rerf;
using rerf::tools::ExperimentConfig;
using rerf::tools::SourceSpec;
using rerf::tools::SweepResult;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::vector<std::uint64_t> seeds(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  std::iota(out.begin(), out.end(), first);
  return out;
}

// mean_error per (algorithm, group) from a sweep summary.
std::map<std::pair<std::string, std::string>, double> mean_errors(const SweepResult& r) {
  std::map<std::pair<std::string, std::string>, double> out;
  for (const auto& s : r.summary) out[{s.algorithm, s.group}] = s.mean_error;
  return out;
}

Outcome split_oracle() {
  Rng rng(20240601);
  std::normal_distribution<double> normal;
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + uniform_index(19, rng);
    const std::size_t d = 1 + uniform_index(3, rng);
    const std::size_t classes = 2 + uniform_index(3, rng);
    const bool ties = trial % 2 == 0;
    Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    Labels y(n);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      x.data()[i] = ties ? static_cast<double>(uniform_index(5, rng)) : normal(rng);
    }
    for (auto& c : y) c = static_cast<Label>(uniform_index(classes, rng));
    const std::size_t min_node = 1 + uniform_index(4, rng);
    const auto got = best_split(x, y, min_node);
    const auto want = testing::brute_force_split(x, y, min_node);
    const bool same =
        got.has_value() == want.has_value() &&
        (!got || (got->column == want->column && got->threshold == want->threshold &&
                  std::abs(got->decrease - want->decrease.value()) <= 1e-12));
    mismatches += !same;
  }
  return {mismatches == 0, std::to_string(mismatches) + "/1000 mismatches"};
}

Outcome sparse_parity_trend() {
  ExperimentConfig c;
  c.source.kind = SourceSpec::Kind::kSparseParity;
  c.source.n_train = 1000;
  c.source.n_test = 1000;
  c.source.dims = {10, 25, 50};
  c.source.relevant = 3;
  c.algorithms = {{"rf", {}}, {"rerf", {}}, {"rotrf", {}}};
  c.trees = 100;
  c.seeds = seeds(1, 10);
  const auto e = mean_errors(tools::run_sweep(c));
  bool pass = true;
  std::string detail;
  for (std::size_t p : c.source.dims) {
    const std::string g = "sparse_parity_p" + std::to_string(p) + "_none";
    const double rf = e.at({"rf", g}), rerf = e.at({"rerf", g}), rot = e.at({"rotrf", g});
    pass = pass && rerf <= rf;
    if (p == 50) pass = pass && rerf < rot;
    detail += "p=" + std::to_string(p) + " rf=" + fmt(rf) + " rerf=" + fmt(rerf) +
              " rotrf=" + fmt(rot) + "; ";
  }
  return {pass, detail};
}

// Trunk sweeps shared by criteria 3-5.
const SweepResult& trunk_sweep() {
  static const SweepResult result = [] {
    ExperimentConfig c;
    c.source.kind = SourceSpec::Kind::kTrunk;
    c.source.n_train = 100;
    c.source.n_test = 10000;
    c.source.dims = {10, 100};
    c.algorithms = {{"rf", {}}, {"rerf", {}}, {"rotrf", {}}, {"rerf-d", {}}, {"rerf-dr", {}}};
    c.transforms = {TransformKind::kNone, TransformKind::kRotation, TransformKind::kAffine};
    c.trees = 100;
    c.seeds = seeds(1, 10);
    return tools::run_sweep(c);
  }();
  return result;
}

Outcome trunk_trend() {
  const auto e = mean_errors(trunk_sweep());
  bool pass = true;
  std::string detail;
  for (int p : {10, 100}) {
    const std::string g = "trunk_p" + std::to_string(p) + "_none";
    const double rf = e.at({"rf", g}), rerf = e.at({"rerf", g});
    pass = pass && rerf < rf;
    detail += "p=" + std::to_string(p) + " rf=" + fmt(rf) + " rerf=" + fmt(rerf) + "; ";
  }
  return {pass, detail};
}

Outcome rotation_robustness() {
  const auto e = mean_errors(trunk_sweep());
  const double rot0 = e.at({"rotrf", "trunk_p100_none"});
  const double rot1 = e.at({"rotrf", "trunk_p100_rotate"});
  const double rf0 = e.at({"rf", "trunk_p100_none"});
  const double rf1 = e.at({"rf", "trunk_p100_rotate"});
  const bool pass = std::abs(rot1 - rot0) < 0.02 && rf1 - rf0 > 0.02;
  return {pass, "rotrf change=" + fmt(rot1 - rot0) + " rf change=" + fmt(rf1 - rf0)};
}

Outcome affine_fragility() {
  const auto e = mean_errors(trunk_sweep());
  const auto change = [&](const std::string& a) {
    return e.at({a, "trunk_p100_affine"}) - e.at({a, "trunk_p100_none"});
  };
  const double rot = change("rotrf"), d = change("rerf-d"), dr = change("rerf-dr");
  const bool pass = rot > 0.02 && std::abs(dr) < std::abs(d);
  return {pass, "rotrf change=" + fmt(rot) + " rerf-d change=" + fmt(d) +
                    " rerf-dr change=" + fmt(dr)};
}

double median_train_seconds(const Dataset& data, const std::string& algorithm, std::size_t d) {
  TrainConfig c;
  c.tree_count = 100;
  c.candidate_count = d;
  c.seed = 5;
  c = tools::configure_algorithm(algorithm, c);
  std::vector<double> t;
  for (int run = 0; run < 5; ++run) t.push_back(timed([&] { return fit(data, c, 1); }).second);
  std::sort(t.begin(), t.end());
  return t[2];
}

Outcome timing_scaling() {
  std::map<std::size_t, std::map<std::string, double>> secs;
  for (std::size_t p : {50u, 100u, 500u}) {
    Rng rng(derive_seed(6, p));
    const Dataset data = gen_trunk({100, p}, rng);
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(p))));
    for (const char* a : {"rf", "rerf", "rotrf"}) secs[p][a] = median_train_seconds(data, a, d);
  }
  bool pass = true;
  std::string detail;
  for (std::size_t p : {100u, 500u}) {
    const double ratio = secs[p]["rerf"] / secs[p]["rf"];
    pass = pass && ratio >= 0.5 && ratio <= 2.0;
    detail += "rerf/rf p=" + std::to_string(p) + " " + fmt(ratio, 2) + "; ";
  }
  const double rot50 = secs[50]["rotrf"] / secs[50]["rf"];
  const double rot500 = secs[500]["rotrf"] / secs[500]["rf"];
  pass = pass && rot500 >= 3.0 * rot50;
  detail += "rotrf/rf p=50 " + fmt(rot50, 2) + " p=500 " + fmt(rot500, 2);
  return {pass, detail};
}

Matrix monotone(const Matrix& x) {
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double v = x(i, j);
      switch (j % 3) {
        case 0: out(i, j) = std::exp(v); break;
        case 1: out(i, j) = 5.0 * v - 2.0; break;
        default: out(i, j) = std::atan(v) + v * v * v; break;
      }
    }
  }
  return out;
}

Outcome monotone_invariance() {
  Rng rng(7);
  const Dataset data = gen_sparse_parity({500, 10, 3, 0.25}, rng);
  const Dataset test = gen_sparse_parity({500, 10, 3, 0.25}, rng);
  Dataset mapped = data;
  mapped.features = monotone(data.features);

  TrainConfig c;
  c.tree_count = 50;
  c.candidate_count = 3;
  c.seed = 8;
  const TrainConfig rf = tools::configure_algorithm("rf", c);
  const Forest a = fit(data, rf);
  const Forest b = fit(mapped, rf);
  const auto leaves_a = leaf_indices(a, data.features);
  const auto leaves_b = leaf_indices(b, mapped.features);
  bool partition = true;
  for (std::size_t t = 0; t < a.trees.size(); ++t) {
    partition = partition && a.trees[t].in_bag == b.trees[t].in_bag;
    for (std::uint32_t row : a.trees[t].in_bag) {
      partition = partition && leaves_a[row][t] == leaves_b[row][t];
    }
  }

  bool ranked = true;
  for (const char* a : {"rerf-r", "rerf-dr"}) {
    const TrainConfig rc = tools::configure_algorithm(a, c);
    ranked = ranked && predict_posterior(fit(data, rc), test.features) ==
                           predict_posterior(fit(mapped, rc), monotone(test.features));
  }
  return {partition && ranked, std::string("axis-aligned partition ") +
                                   (partition ? "identical" : "differs") +
                                   ", rank-transformed predictions " +
                                   (ranked ? "identical" : "differ")};
}

// Held-out error picks d; the grid is then compared to the analytic posterior.
double posterior_mad(const std::string& algorithm, std::uint64_t seed) {
  const std::size_t p = 20, relevant = 3;
  const double sd = 0.25;
  Rng train_rng(derive_seed(seed, 1)), test_rng(derive_seed(seed, 2));
  const Dataset train = gen_sparse_parity({1000, p, relevant, sd}, train_rng);
  const Dataset test = gen_sparse_parity({1000, p, relevant, sd}, test_rng);

  TrainConfig c;
  c.tree_count = 1000;
  c.seed = derive_seed(seed, 3);
  c = tools::configure_algorithm(algorithm, c);
  Forest best;
  double best_error = 2.0;
  for (std::size_t d : tools::default_d_grid(p)) {
    c.candidate_count = d;
    Forest f = fit(train, c, 1);
    const double err = misclassification_rate(predict(f, test.features, 1), test.labels);
    if (err < best_error) {
      best_error = err;
      best = std::move(f);
    }
  }

  GridSpec g;
  g.dim_x = 0;
  g.dim_y = 1;
  g.x_min = g.y_min = -0.5;
  g.x_max = g.y_max = 1.5;
  g.resolution_x = g.resolution_y = 50;
  g.fill = fill_values(train.features, FillRule::kMedian);
  const PosteriorGrid grid = posterior_grid(best, g, 1);
  double mad = 0.0;
  const RowMatrix points = grid.points;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    mad += std::abs(grid.posterior(i, 1) -
                    testing::parity_posterior(points.row(i).data(), relevant, sd));
  }
  return mad / static_cast<double>(points.rows());
}

Outcome posterior_fidelity() {
  int wins = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const double rerf = posterior_mad("rerf", seed);
    const double rf = posterior_mad("rf", seed);
    wins += rerf < rf;
    detail += "s" + std::to_string(seed) + " rerf=" + fmt(rerf) + " rf=" + fmt(rf) + "; ";
  }
  return {wins >= 3, std::to_string(wins) + "/5 seeds favour rerf; " + detail};
}

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome sampler_suites() {
  const std::string cmd = std::string(RERF_UNIT_TESTS_PATH) +
                          " --gtest_brief=1 --gtest_filter='SampleAxisAligned.*:SampleForestRC.*:"
                          "SampleRerf.*:SampleRotation.*' > /dev/null 2>&1";
  const int code = run_command(cmd);
  return {code == 0, "projection sampler suites exit " + std::to_string(code)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// Drops the train_seconds column (always last).
std::string strip_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string out;
  for (std::string line; std::getline(in, line);) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

Outcome sweep_determinism() {
  const fs::path dir = fs::temp_directory_path() / "rerf_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "sweep.json") << R"({
    "name": "determinism",
    "source": {"generator": "sparse_parity", "n": 200, "n_test": 200, "p": [5, 12]},
    "algorithms": ["rf", "rerf", "rotrf", "rerf-dr"],
    "transforms": ["none", "affine", "outliers"],
    "trees": 20, "seeds": [1, 2]
  })";
  const std::vector<std::pair<std::string, int>> runs{{"a", 1}, {"b", 1}, {"c", 4}};
  for (const auto& [name, threads] : runs) {
    const std::string cmd = std::string(RERF_CLI_PATH) + " sweep --config " +
                            (dir / "sweep.json").string() + " --threads " +
                            std::to_string(threads) + " --out " + (dir / name).string() +
                            " > /dev/null 2>&1";
    if (run_command(cmd) != 0) return {false, "sweep run " + name + " failed"};
  }
  std::vector<std::string> differing;
  for (const char* f : {"results_raw.csv", "results.csv", "curve.csv", "profile.csv",
                        "profile_auc.csv", "summary.csv"}) {
    const bool timed_file = std::string(f).rfind("results", 0) == 0;
    auto content = [&](const std::string& run) {
      const std::string text = slurp(dir / run / f);
      return timed_file ? strip_timing(text) : text;
    };
    const std::string a = content("a");
    if (a.empty() || a != content("b") || a != content("c")) differing.emplace_back(f);
  }
  fs::remove_all(dir);
  std::string detail = "3 runs (threads 1,1,4): ";
  if (differing.empty()) return {true, detail + "all non-timing outputs identical"};
  for (const auto& f : differing) detail += f + " ";
  return {false, detail + "differ"};
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "split oracle equivalence", 10, split_oracle},
      {2, "sparse parity trend", 15 * 60, sparse_parity_trend},
      {3, "trunk trend", 10 * 60, trunk_trend},
      {4, "rotation robustness", 0, rotation_robustness},
      {5, "affine fragility", 0, affine_fragility},
      {6, "timing scaling", 20 * 60, timing_scaling},
      {7, "monotone and rank invariance", 0, monotone_invariance},
      {8, "posterior fidelity", 0, posterior_fidelity},
      {9, "sampler suites", 60, sampler_suites},
      {10, "sweep determinism", 0, sweep_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    double seconds = 0.0;
    try {
      std::tie(o, seconds) = timed(c.run);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    // Criteria 4 and 5 reuse the trunk sweep timed under criterion 3.
    if (c.limit_seconds > 0 && seconds > c.limit_seconds) {
      o.pass = false;
      o.detail += " (over the " + fmt(c.limit_seconds, 0) + " s limit)";
    }
    failed += !o.pass;
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL")
              << " (" << fmt(seconds, 1) << " s) " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " criteria FAILED")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
