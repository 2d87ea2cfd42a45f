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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "rerf/errors.hpp"
#include "rerf/eval.hpp"
#include "rerf/forest.hpp"

namespace rerf {
namespace {

ResultRow row(std::string algorithm, std::string dataset, double error, std::size_t d = 1,
              std::size_t eval_count = 100) {
  return ResultRow{std::move(algorithm), std::move(dataset), d, error, 0.0, eval_count};
}

const AlgorithmProfile& find(const PerformanceProfile& p, const std::string& name) {
  for (const auto& a : p.algorithms) {
    if (a.algorithm == name) return a;
  }
  throw std::out_of_range(name);
}

// Midpoint-rule integral of the ECDF of `ratios` over [1, tau_max].
double numeric_auc(const std::vector<double>& ratios, double tau_max) {
  const int steps = 200000;
  const double h = (tau_max - 1.0) / steps;
  double area = 0.0;
  for (int s = 0; s < steps; ++s) {
    const double tau = 1.0 + (s + 0.5) * h;
    double f = 0.0;
    for (double r : ratios) f += r <= tau;
    area += f / static_cast<double>(ratios.size()) * h;
  }
  return area / (tau_max - 1.0);
}

TEST(Misclassification, Examples) {
  const Labels a{0, 1, 2, 1, 0, 1, 0, 0, 1, 1};
  EXPECT_EQ(misclassification_rate(a, a), 0.0);
  const Labels flipped{1, 0, 0, 0, 1, 0, 1, 1, 0, 0};
  EXPECT_EQ(misclassification_rate(a, flipped), 1.0);
  Labels three = a;
  three[0] = 1;
  three[4] = 2;
  three[9] = 0;
  EXPECT_DOUBLE_EQ(misclassification_rate(three, a), 0.3);
  EXPECT_THROW(misclassification_rate(Labels{0}, Labels{0, 1}), InvalidArgument);
  EXPECT_THROW(misclassification_rate(Labels{}, Labels{}), InvalidArgument);
}

TEST(RelativeErrorCurve, BaselineIsZeroAndDifferencesAreSigned) {
  const ResultTable t{row("rf", "a", 0.15), row("rf", "b", 0.2), row("rerf", "a", 0.10),
                      row("rerf", "b", 0.25)};
  const auto curves = relative_error_curve(t, "rf");
  for (const auto& pt : curves.at("rf")) EXPECT_EQ(pt.relative_error, 0.0);
  ASSERT_EQ(curves.at("rerf").size(), 2u);
  EXPECT_NEAR(curves.at("rerf")[0].relative_error, -0.05, 1e-15);
  EXPECT_NEAR(curves.at("rerf")[1].relative_error, 0.05, 1e-15);
}

TEST(RelativeErrorCurve, MissingBaselineThrows) {
  const ResultTable t{row("rf", "a", 0.15), row("rerf", "a", 0.1), row("rerf", "b", 0.1)};
  EXPECT_THROW(relative_error_curve(t, "rf"), InvalidArgument);
  EXPECT_THROW(relative_error_curve(t, "rotrf"), InvalidArgument);
}

TEST(PerformanceProfile, SingleDatasetRatios) {
  const ResultTable t{row("a", "m", 0.1), row("b", "m", 0.2), row("c", "m", 0.4)};
  const PerformanceProfile p = performance_profile(t);
  EXPECT_DOUBLE_EQ(find(p, "a").ratios[0], 1.0);
  EXPECT_DOUBLE_EQ(find(p, "b").ratios[0], 2.0);
  EXPECT_DOUBLE_EQ(find(p, "c").ratios[0], 4.0);
  ASSERT_EQ(find(p, "a").points.size(), 1u);
  EXPECT_EQ(find(p, "a").points[0].tau, 1.0);
  EXPECT_EQ(find(p, "a").points[0].fraction, 1.0);
  EXPECT_DOUBLE_EQ(p.tau_max, 4.0);
  for (const auto& a : p.algorithms) {
    EXPECT_NEAR(a.auc, numeric_auc(a.ratios, p.tau_max), 1e-4) << a.algorithm;
  }
}

TEST(PerformanceProfile, AllTiesGiveUnitAuc) {
  const ResultTable t{row("a", "m", 0.2), row("b", "m", 0.2), row("a", "n", 0.3),
                      row("b", "n", 0.3)};
  const PerformanceProfile p = performance_profile(t);
  for (const auto& a : p.algorithms) {
    EXPECT_EQ(a.auc, 1.0);
    ASSERT_EQ(a.points.size(), 1u);
    EXPECT_EQ(a.points[0].fraction, 1.0);
  }
}

TEST(PerformanceProfile, SymmetricPairHasEqualAucs) {
  const ResultTable t{row("A", "m1", 0.1), row("A", "m2", 0.3), row("B", "m1", 0.2),
                      row("B", "m2", 0.15)};
  const PerformanceProfile p = performance_profile(t);
  EXPECT_EQ(find(p, "A").ratios, (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(find(p, "B").ratios, (std::vector<double>{2.0, 1.0}));
  EXPECT_DOUBLE_EQ(find(p, "A").auc, find(p, "B").auc);
  EXPECT_NEAR(find(p, "A").auc, numeric_auc({1.0, 2.0}, 2.0), 1e-4);
}

TEST(PerformanceProfile, ScaleInvariantPerDataset) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> err(0.01, 0.5), scale(0.2, 1.9);
  ResultTable t, scaled;
  for (int m = 0; m < 6; ++m) {
    const double s = scale(rng);
    for (const char* a : {"x", "y", "z"}) {
      const double e = err(rng);
      t.push_back(row(a, "m" + std::to_string(m), e));
      scaled.push_back(row(a, "m" + std::to_string(m), e * s));
    }
  }
  const PerformanceProfile p = performance_profile(t);
  const PerformanceProfile q = performance_profile(scaled);
  for (std::size_t a = 0; a < p.algorithms.size(); ++a) {
    for (std::size_t m = 0; m < 6; ++m) {
      EXPECT_NEAR(p.algorithms[a].ratios[m], q.algorithms[a].ratios[m], 1e-12);
    }
    EXPECT_NEAR(p.algorithms[a].auc, q.algorithms[a].auc, 1e-12);
  }
}

TEST(PerformanceProfile, EcdfPropertiesOnRandomTables) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> err(0.0, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    ResultTable t;
    for (int m = 0; m < 7; ++m) {
      for (const char* a : {"p", "q", "r", "s"}) {
        double e = err(rng);
        if (e < 0.05) e = 0.0;
        t.push_back(row(a, "m" + std::to_string(m), e, 1, 200));
      }
    }
    const PerformanceProfile p = performance_profile(t);
    for (const auto& a : p.algorithms) {
      ASSERT_FALSE(a.points.empty());
      EXPECT_EQ(a.points.back().fraction, 1.0);
      double prev_tau = 0.0, prev_frac = 0.0;
      for (const auto& pt : a.points) {
        EXPECT_GE(pt.tau, 1.0);
        EXPECT_GT(pt.tau, prev_tau);
        EXPECT_GT(pt.fraction, prev_frac);
        prev_tau = pt.tau;
        prev_frac = pt.fraction;
      }
      EXPECT_GE(a.auc, 0.0);
      EXPECT_LE(a.auc, 1.0);
      if (p.tau_max > 1.0) {
        EXPECT_NEAR(a.auc, numeric_auc(a.ratios, p.tau_max), 1e-3);
      }
    }
  }
}

TEST(PerformanceProfile, ZeroMinimumUsesHalfASample) {
  const ResultTable t{row("a", "m", 0.0, 1, 50), row("b", "m", 0.02, 1, 50)};
  const PerformanceProfile p = performance_profile(t);
  EXPECT_EQ(find(p, "a").ratios[0], 1.0);
  EXPECT_DOUBLE_EQ(find(p, "b").ratios[0], (0.02 + 0.01) / 0.01);
  EXPECT_EQ(p.zero_minimum_datasets, (std::vector<std::string>{"m"}));
}

TEST(PerformanceProfile, Errors) {
  EXPECT_THROW(performance_profile({}), InvalidArgument);
  EXPECT_THROW(performance_profile({row("a", "m", 0.1)}), InvalidArgument);
  EXPECT_THROW(performance_profile({row("a", "m", 0.1), row("b", "n", 0.1), row("a", "n", 0.2)}),
               InvalidArgument);
  EXPECT_THROW(performance_profile({row("a", "m", 0.0, 1, 0), row("b", "m", 0.1, 1, 0)}),
               InvalidArgument);
}

TEST(SelectBestD, MinimumWithTiesToSmallerD) {
  ResultTable raw{row("rf", "m", 0.3, 1), row("rf", "m", 0.2, 4), row("rf", "m", 0.2, 2),
                  row("rerf", "m", 0.1, 9)};
  raw[0].train_seconds = 1.0;
  raw[1].train_seconds = 2.0;
  raw[2].train_seconds = 3.0;
  const ResultTable best = select_best_d(raw);
  ASSERT_EQ(best.size(), 2u);
  EXPECT_EQ(best[0].algorithm, "rerf");
  EXPECT_EQ(best[1].d, 2u);
  EXPECT_DOUBLE_EQ(best[1].error, 0.2);
  EXPECT_DOUBLE_EQ(best[1].train_seconds, 2.0);
}

Forest single_leaf(std::vector<double> posterior, std::size_t p) {
  Forest f;
  f.feature_count = p;
  f.class_count = posterior.size();
  Tree t;
  t.class_count = posterior.size();
  t.nodes.push_back(TreeNode{-1, -1, 0.0, 0, 3});
  t.posteriors = std::move(posterior);
  f.trees.push_back(std::move(t));
  f.config.tree_count = 1;
  return f;
}

Forest stump(std::size_t dim, double threshold, std::size_t p) {
  Forest f;
  f.feature_count = p;
  f.class_count = 2;
  Tree t;
  t.class_count = 2;
  t.nodes = {TreeNode{1, 2, threshold, 0, 1}, TreeNode{-1, -1, 0.0, 0, 4},
             TreeNode{-1, -1, 0.0, 2, 4}};
  t.directions = {DirectionEntry{static_cast<std::uint32_t>(dim), 1.0}};
  t.posteriors = {0.9, 0.1, 0.2, 0.8};
  f.trees.push_back(std::move(t));
  f.config.tree_count = 1;
  return f;
}

GridSpec grid(std::size_t p, std::size_t dx, std::size_t dy) {
  GridSpec s;
  s.dim_x = dx;
  s.dim_y = dy;
  s.x_min = -1.0;
  s.x_max = 1.0;
  s.y_min = -2.0;
  s.y_max = 2.0;
  s.resolution_x = 11;
  s.resolution_y = 7;
  s.fill = Vector::Constant(static_cast<Eigen::Index>(p), 0.25);
  return s;
}

TEST(PosteriorGrid, SingleLeafIsUniform) {
  const PosteriorGrid g = posterior_grid(single_leaf({0.25, 0.75}, 3), grid(3, 0, 2));
  ASSERT_EQ(g.posterior.rows(), 77);
  EXPECT_TRUE((g.posterior.col(0).array() == 0.25).all());
  EXPECT_TRUE((g.points.col(1).array() == 0.25).all());
}

TEST(PosteriorGrid, StumpGivesAStepInX) {
  const PosteriorGrid g = posterior_grid(stump(1, 0.1, 3), grid(3, 1, 0));
  for (Eigen::Index i = 0; i < g.points.rows(); ++i) {
    const double x = g.points(i, 1);
    EXPECT_EQ(g.posterior(i, 1), x > 0.1 ? 0.8 : 0.1);
    EXPECT_NEAR(g.posterior.row(i).sum(), 1.0, 1e-12);
    EXPECT_EQ(g.points(i, 2), 0.25);
  }
  EXPECT_EQ(g.points(0, 1), -1.0);
  EXPECT_EQ(g.points(g.points.rows() - 1, 1), 1.0);
  EXPECT_EQ(g.points(g.points.rows() - 1, 0), 2.0);
}

TEST(PosteriorGrid, RowsSumToOneOnTrainedForest) {
  const Dataset data = testing::blobs(200, 4, 0.5, 5, 3);
  TrainConfig c;
  c.projection = ProjectionSpec::sparse_ternary();
  c.tree_count = 20;
  c.candidate_count = 2;
  const Forest f = fit(data, c);
  GridSpec s = grid(4, 0, 3);
  s.fill = fill_values(data.features, FillRule::kMedian);
  const PosteriorGrid g = posterior_grid(f, s, 2);
  for (Eigen::Index i = 0; i < g.posterior.rows(); ++i) {
    EXPECT_NEAR(g.posterior.row(i).sum(), 1.0, 1e-12);
  }
}

TEST(PosteriorGrid, RejectsBadSpecs) {
  const Forest f = single_leaf({0.5, 0.5}, 2);
  EXPECT_THROW(posterior_grid(f, grid(2, 0, 2)), InvalidArgument);
  EXPECT_THROW(posterior_grid(f, grid(2, 1, 1)), InvalidArgument);
  GridSpec s = grid(2, 0, 1);
  s.resolution_x = 1;
  EXPECT_THROW(posterior_grid(f, s), InvalidArgument);
  s = grid(3, 0, 1);
  EXPECT_THROW(posterior_grid(f, s), InvalidArgument);
}

TEST(FillValues, MedianAndMean) {
  Matrix x(4, 2);
  x << 1, 10, 2, 20, 3, 30, 100, 40;
  EXPECT_EQ(fill_values(x, FillRule::kMedian), (Vector(2) << 2.5, 25).finished());
  EXPECT_EQ(fill_values(x, FillRule::kMean), (Vector(2) << 26.5, 25).finished());
}

TEST(Timed, NonNegativeAndLinearInTrees) {
  EXPECT_GE(timed([] {}), 0.0);
  EXPECT_EQ(timed([] { return 7; }).first, 7);

  const Dataset data = testing::blobs(2000, 20, 0.2, 6);
  TrainConfig c;
  c.projection = ProjectionSpec::sparse_ternary();
  c.candidate_count = 4;
  auto median = [&](std::size_t trees) {
    c.tree_count = trees;
    std::vector<double> t;
    for (int r = 0; r < 5; ++r) t.push_back(timed([&] { return fit(data, c, 1); }).second);
    std::sort(t.begin(), t.end());
    return t[2];
  };
  const double ratio = median(2) / median(1);
  EXPECT_GE(ratio, 1.5);
  EXPECT_LE(ratio, 3.0);
}

TEST(ResultsCsv, RoundTrip) {
  ResultTable t{row("rf", "trunk_p10", 0.125, 3), row("rerf", "trunk_p10", 1.0 / 3.0, 1)};
  t[0].train_seconds = 0.5;
  const auto path = std::filesystem::temp_directory_path() / "rerf_results_roundtrip.csv";
  {
    std::ofstream out(path);
    write_results_csv(out, t);
  }
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "algorithm,dataset,d,error,train_seconds");
  in.close();
  ResultTable back = read_results_csv(path);
  std::filesystem::remove(path);
  for (auto& r : back) r.eval_count = 100;
  EXPECT_EQ(back, t);
}

TEST(ProfileCsv, FixedHeaders) {
  const PerformanceProfile p =
      performance_profile({row("a", "m", 0.1), row("b", "m", 0.2)});
  std::ostringstream profile, auc;
  write_profile_csv(profile, p);
  write_auc_csv(auc, p);
  EXPECT_EQ(profile.str().substr(0, profile.str().find('\n')), "algorithm,tau,fraction");
  EXPECT_EQ(auc.str().substr(0, auc.str().find('\n')), "algorithm,auc");
}

}  // namespace
}  // namespace rerf
