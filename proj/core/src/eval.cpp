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

#include "rerf/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <set>
#include <tuple>

#include "rerf/csv_io.hpp"
#include "rerf/errors.hpp"

namespace rerf {

double misclassification_rate(std::span<const Label> predicted,
                              std::span<const Label> truth) {
  if (predicted.size() != truth.size()) {
    throw InvalidArgument("misclassification_rate: " + std::to_string(predicted.size()) +
                          " predictions for " + std::to_string(truth.size()) + " labels");
  }
  if (truth.empty()) throw InvalidArgument("misclassification_rate: no labels");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) wrong += predicted[i] != truth[i];
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

ResultTable select_best_d(const ResultTable& raw) {
  std::map<std::pair<std::string, std::string>, std::vector<const ResultRow*>> groups;
  for (const auto& row : raw) groups[{row.algorithm, row.dataset}].push_back(&row);
  ResultTable out;
  out.reserve(groups.size());
  for (const auto& [key, rows] : groups) {
    const ResultRow* best = rows.front();
    double seconds = 0.0;
    for (const ResultRow* r : rows) {
      seconds += r->train_seconds;
      if (r->error < best->error || (r->error == best->error && r->d < best->d)) best = r;
    }
    ResultRow row = *best;
    row.train_seconds = seconds / static_cast<double>(rows.size());
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

// (algorithm -> dataset -> row), rejecting duplicates.
std::map<std::string, std::map<std::string, const ResultRow*>> index_cells(
    const ResultTable& results) {
  std::map<std::string, std::map<std::string, const ResultRow*>> cells;
  for (const auto& row : results) {
    if (!(row.error >= 0.0 && row.error <= 1.0)) {
      throw InvalidArgument("error rate outside [0, 1] for " + row.algorithm + " on " +
                            row.dataset);
    }
    if (!cells[row.algorithm].emplace(row.dataset, &row).second) {
      throw InvalidArgument("duplicate result for " + row.algorithm + " on " +
                            row.dataset + "; select one d per dataset first");
    }
  }
  return cells;
}

}  // namespace

std::map<std::string, std::vector<CurvePoint>> relative_error_curve(
    const ResultTable& results, const std::string& baseline) {
  const auto cells = index_cells(results);
  const auto base = cells.find(baseline);
  if (base == cells.end()) {
    throw InvalidArgument("baseline '" + baseline + "' has no results");
  }
  std::map<std::string, std::vector<CurvePoint>> curves;
  for (const auto& [algorithm, by_dataset] : cells) {
    auto& curve = curves[algorithm];
    for (const auto& [dataset, row] : by_dataset) {
      const auto b = base->second.find(dataset);
      if (b == base->second.end()) {
        throw InvalidArgument("baseline '" + baseline + "' has no result on " + dataset);
      }
      curve.push_back({dataset, row->error - b->second->error});
    }
  }
  return curves;
}

PerformanceProfile performance_profile(const ResultTable& results) {
  if (results.empty()) throw InvalidArgument("performance profile of an empty table");
  const auto cells = index_cells(results);
  if (cells.size() < 2) {
    throw InvalidArgument("performance profile needs at least two algorithms");
  }
  std::set<std::string> dataset_set;
  for (const auto& row : results) dataset_set.insert(row.dataset);

  PerformanceProfile profile;
  profile.datasets.assign(dataset_set.begin(), dataset_set.end());
  for (const auto& [algorithm, by_dataset] : cells) {
    if (by_dataset.size() != dataset_set.size()) {
      throw InvalidArgument("algorithm '" + algorithm + "' is missing datasets");
    }
    profile.algorithms.push_back({algorithm, {}, {}, 0.0});
  }

  for (const auto& dataset : profile.datasets) {
    double best = 1.0;
    std::size_t eval_count = 0;
    for (const auto& [algorithm, by_dataset] : cells) {
      const ResultRow* row = by_dataset.at(dataset);
      best = std::min(best, row->error);
      eval_count = std::max(eval_count, row->eval_count);
    }
    double eps = 0.0;
    if (best == 0.0) {
      if (eval_count == 0) {
        throw InvalidArgument("dataset " + dataset +
                              " has a zero minimum error but no evaluation size");
      }
      eps = 1.0 / (2.0 * static_cast<double>(eval_count));
      profile.zero_minimum_datasets.push_back(dataset);
    }
    std::size_t a = 0;
    for (const auto& [algorithm, by_dataset] : cells) {
      const double err = by_dataset.at(dataset)->error;
      double ratio;
      if (best > 0.0) {
        ratio = err / best;
      } else {
        ratio = err == 0.0 ? 1.0 : (err + eps) / eps;
      }
      profile.algorithms[a++].ratios.push_back(ratio);
    }
  }

  for (const auto& alg : profile.algorithms) {
    for (const double r : alg.ratios) profile.tau_max = std::max(profile.tau_max, r);
  }
  const double m = static_cast<double>(profile.datasets.size());
  for (auto& alg : profile.algorithms) {
    std::vector<double> sorted = alg.ratios;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (k + 1 < sorted.size() && sorted[k + 1] == sorted[k]) continue;
      alg.points.push_back({sorted[k], static_cast<double>(k + 1) / m});
    }
    if (profile.tau_max == 1.0) {
      alg.auc = 1.0;
    } else {
      // Integral of the step ECDF over [1, tau_max]: each ratio contributes
      // (tau_max - r) / m.
      double area = 0.0;
      for (const double r : sorted) area += (profile.tau_max - r) / m;
      alg.auc = area / (profile.tau_max - 1.0);
    }
  }
  return profile;
}

Vector fill_values(const Matrix& x, FillRule rule) {
  if (x.rows() < 1) throw InvalidArgument("fill values need at least one row");
  Vector fill(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (rule == FillRule::kMean) {
      fill(j) = x.col(j).mean();
      continue;
    }
    std::vector<double> column(x.col(j).data(), x.col(j).data() + x.rows());
    std::sort(column.begin(), column.end());
    const std::size_t n = column.size();
    fill(j) = n % 2 == 1 ? column[n / 2] : (column[n / 2 - 1] + column[n / 2]) / 2.0;
  }
  return fill;
}

Matrix grid_points(const GridSpec& spec) {
  const auto p = static_cast<std::size_t>(spec.fill.size());
  if (spec.dim_x >= p || spec.dim_y >= p) {
    throw InvalidArgument("grid dimensions (" + std::to_string(spec.dim_x) + ", " +
                          std::to_string(spec.dim_y) + ") outside p=" +
                          std::to_string(p));
  }
  if (spec.dim_x == spec.dim_y) throw InvalidArgument("grid dimensions must differ");
  if (spec.resolution_x < 2 || spec.resolution_y < 2) {
    throw InvalidArgument("grid resolution must be >= 2 per axis");
  }
  if (!(spec.x_min < spec.x_max) || !(spec.y_min < spec.y_max)) {
    throw InvalidArgument("grid bounds must be increasing");
  }
  const auto rx = spec.resolution_x;
  const auto ry = spec.resolution_y;
  Matrix points(static_cast<Eigen::Index>(rx * ry), static_cast<Eigen::Index>(p));
  for (std::size_t a = 0; a < rx; ++a) {
    const double x = spec.x_min + (spec.x_max - spec.x_min) * static_cast<double>(a) /
                                      static_cast<double>(rx - 1);
    for (std::size_t b = 0; b < ry; ++b) {
      const double y = spec.y_min + (spec.y_max - spec.y_min) * static_cast<double>(b) /
                                        static_cast<double>(ry - 1);
      const auto row = static_cast<Eigen::Index>(a * ry + b);
      points.row(row) = spec.fill.transpose();
      points(row, static_cast<Eigen::Index>(spec.dim_x)) = x;
      points(row, static_cast<Eigen::Index>(spec.dim_y)) = y;
    }
  }
  return points;
}

PosteriorGrid posterior_grid(const Forest& forest, const GridSpec& spec,
                             unsigned threads) {
  if (static_cast<std::size_t>(spec.fill.size()) != forest.feature_count) {
    throw InvalidArgument("grid fill has " + std::to_string(spec.fill.size()) +
                          " values, model expects " +
                          std::to_string(forest.feature_count));
  }
  PosteriorGrid grid;
  grid.points = grid_points(spec);
  grid.posterior = predict_posterior(forest, grid.points, threads);
  return grid;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_results_csv(std::ostream& out, const ResultTable& table) {
  out << "algorithm,dataset,d,error,train_seconds\n";
  for (const auto& row : table) {
    out << csv_field(row.algorithm) << ',' << csv_field(row.dataset) << ',' << row.d
        << ',' << format_double(row.error) << ',' << format_double(row.train_seconds)
        << '\n';
  }
}

ResultTable read_results_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv_table(path);
  const std::vector<std::string> expected{"algorithm", "dataset", "d", "error",
                                          "train_seconds"};
  if (table.header != expected) {
    throw ParseError("results header must be algorithm,dataset,d,error,train_seconds", 1);
  }
  ResultTable out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& f = table.rows[i];
    ResultRow row;
    row.algorithm = f[0];
    row.dataset = f[1];
    const auto parse = [&](const std::string& s, auto& v, const char* what) {
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(std::string("bad ") + what + " '" + s + "'",
                         table.line_numbers[i]);
      }
    };
    parse(f[2], row.d, "d");
    parse(f[3], row.error, "error");
    parse(f[4], row.train_seconds, "train_seconds");
    out.push_back(std::move(row));
  }
  return out;
}

void write_profile_csv(std::ostream& out, const PerformanceProfile& profile) {
  out << "algorithm,tau,fraction\n";
  for (const auto& alg : profile.algorithms) {
    for (const auto& pt : alg.points) {
      out << csv_field(alg.algorithm) << ',' << format_double(pt.tau) << ','
          << format_double(pt.fraction) << '\n';
    }
  }
}

void write_auc_csv(std::ostream& out, const PerformanceProfile& profile) {
  out << "algorithm,auc\n";
  for (const auto& alg : profile.algorithms) {
    out << csv_field(alg.algorithm) << ',' << format_double(alg.auc) << '\n';
  }
}

void write_curve_csv(std::ostream& out,
                     const std::map<std::string, std::vector<CurvePoint>>& curves) {
  out << "algorithm,dataset,relative_error\n";
  for (const auto& [algorithm, curve] : curves) {
    for (const auto& pt : curve) {
      out << csv_field(algorithm) << ',' << csv_field(pt.dataset) << ','
          << format_double(pt.relative_error) << '\n';
    }
  }
}

void write_posterior_grid_csv(std::ostream& out, const GridSpec& spec,
                              const PosteriorGrid& grid) {
  out << "x,y";
  for (Eigen::Index c = 0; c < grid.posterior.cols(); ++c) out << ",posterior_" << c;
  out << '\n';
  for (Eigen::Index i = 0; i < grid.points.rows(); ++i) {
    out << format_double(grid.points(i, static_cast<Eigen::Index>(spec.dim_x))) << ','
        << format_double(grid.points(i, static_cast<Eigen::Index>(spec.dim_y)));
    for (Eigen::Index c = 0; c < grid.posterior.cols(); ++c) {
      out << ',' << format_double(grid.posterior(i, c));
    }
    out << '\n';
  }
}

}  // namespace rerf
