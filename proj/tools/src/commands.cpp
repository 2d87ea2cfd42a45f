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

#include "rerf_tools/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rerf/csv_io.hpp"
#include "rerf/errors.hpp"
#include "rerf/eval.hpp"
#include "rerf/forest.hpp"
#include "rerf/model_io.hpp"
#include "rerf_tools/algorithms.hpp"
#include "rerf_tools/experiment.hpp"

namespace rerf::tools {

namespace {

using nlohmann::json;

// Writes to a file, or to stdout when the path is empty.
class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (!path_.empty()) {
      file_.open(path_, std::ios::binary);
      if (!file_) throw IoError("cannot write " + path_);
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void close() {
    stream().flush();
    if (!stream()) throw IoError("write failed: " + (path_.empty() ? "stdout" : path_));
  }
  bool to_stdout() const { return path_.empty(); }

 private:
  std::string path_;
  std::ofstream file_;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

// --- train ---------------------------------------------------------------

struct TrainOptions {
  std::optional<std::string> config;
  std::optional<std::string> data;
  std::optional<std::string> algo;
  std::optional<std::size_t> trees;
  std::optional<std::size_t> d;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> min_node;
  std::optional<std::size_t> max_depth;
  std::optional<std::size_t> rc_k;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool no_bootstrap = false;
};

template <typename T>
void overlay(std::optional<T>& flag, const json& cfg, const char* key) {
  if (flag || !cfg.contains(key)) return;
  try {
    flag = cfg[key].get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("config: '") + key + "' has the wrong type");
  }
}

int cmd_train(TrainOptions o) {
  bool bootstrap = !o.no_bootstrap;
  if (o.config) {
    const json cfg = read_json(*o.config);
    if (!cfg.is_object()) throw InvalidArgument("train config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      static const std::vector<std::string> known{
          "data", "algo", "trees", "d", "seed", "min_node", "max_depth",
          "rc_k", "out", "threads", "bootstrap"};
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw InvalidArgument("config: '" + key + "' is not a recognised key");
      }
    }
    overlay(o.data, cfg, "data");
    overlay(o.algo, cfg, "algo");
    overlay(o.trees, cfg, "trees");
    overlay(o.d, cfg, "d");
    overlay(o.seed, cfg, "seed");
    overlay(o.min_node, cfg, "min_node");
    overlay(o.max_depth, cfg, "max_depth");
    overlay(o.rc_k, cfg, "rc_k");
    overlay(o.out, cfg, "out");
    overlay(o.threads, cfg, "threads");
    if (!o.no_bootstrap && cfg.contains("bootstrap")) {
      if (!cfg["bootstrap"].is_boolean()) {
        throw InvalidArgument("config: 'bootstrap' must be true or false");
      }
      bootstrap = cfg["bootstrap"].get<bool>();
    }
  }
  if (!o.data) throw InvalidArgument("train needs --data");
  if (!o.out) throw InvalidArgument("train needs --out");

  const Dataset data = load_csv(*o.data);
  data.validate();
  const std::size_t p = data.dimension();

  TrainConfig tc;
  tc.tree_count = o.trees.value_or(default_tree_count(data.size()));
  tc.candidate_count = o.d.value_or(std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(p))))));
  tc.min_node_size = o.min_node.value_or(tc.min_node_size);
  tc.max_depth = o.max_depth;
  tc.bootstrap = bootstrap;
  tc.seed = o.seed.value_or(0);
  tc = configure_algorithm(o.algo.value_or("rerf"), tc, o.rc_k.value_or(3));
  tc.validate(p);

  const unsigned threads = o.threads.value_or(0);
  auto [forest, seconds] = timed([&] { return fit(data, tc, threads); });
  save_model(forest, *o.out);

  json record{{"command", "train"},
              {"model", *o.out},
              {"algorithm", o.algo.value_or("rerf")},
              {"n", data.size()},
              {"p", p},
              {"classes", forest.class_count},
              {"trees", tc.tree_count},
              {"d", tc.candidate_count},
              {"seed", tc.seed},
              {"train_seconds", seconds}};
  if (tc.bootstrap) {
    const OobResult oob = oob_evaluate(forest, data, threads);
    record["oob_error"] = oob.covered > 0 ? json(oob.error) : json(nullptr);
    record["oob_covered"] = oob.covered;
  }
  std::cout << record.dump() << '\n';
  return kExitOk;
}

// --- predict -------------------------------------------------------------

std::string class_label(const Forest& forest, std::size_t id) {
  return id < forest.class_names.size() ? forest.class_names[id] : std::to_string(id);
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path, unsigned threads) {
  const Forest forest = load_model(model_path);
  const std::size_t p = forest.feature_count;
  const std::string text = read_text(data_path);

  CsvTable table;
  if (text.find_first_not_of(" \t\r\n") != std::string::npos) table = parse_csv_table(text);
  const std::size_t cols = table.header.size();
  const bool empty = table.rows.empty();
  if (!table.header.empty() && cols != p && cols != p + 1) {
    throw InvalidArgument("data has " + std::to_string(cols) + " columns, model expects " +
                          std::to_string(p) + " features (" + std::to_string(p + 1) +
                          " columns with a label)");
  }
  const bool has_labels = cols == p + 1;

  Output out(out_path);
  std::ostream& os = out.stream();
  os << "label";
  for (std::size_t c = 0; c < forest.class_count; ++c) os << ",posterior_" << c;
  os << '\n';
  if (empty) {
    out.close();
    std::clog << "[predict] no rows\n";
    return kExitOk;
  }

  const Matrix x = parse_features(table, p);
  const Matrix posterior = predict_posterior(forest, x, threads);
  const Labels predicted = argmax_rows(posterior);
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < posterior.rows(); ++i) {
    const std::string name = class_label(forest, static_cast<std::size_t>(predicted[i]));
    os << name;
    for (Eigen::Index c = 0; c < posterior.cols(); ++c) {
      os << ',' << format_double(posterior(i, c));
    }
    os << '\n';
    if (has_labels) correct += table.rows[static_cast<std::size_t>(i)].back() == name;
  }
  out.close();

  json record{{"command", "predict"}, {"rows", x.rows()}};
  if (has_labels) {
    record["accuracy"] = static_cast<double>(correct) / static_cast<double>(x.rows());
  }
  (out.to_stdout() ? std::clog : std::cout) << record.dump() << '\n';
  return kExitOk;
}

// --- sweep ---------------------------------------------------------------

struct SweepOptions {
  std::string config;
  std::optional<std::string> data;
  std::vector<std::string> algos;
  std::optional<std::size_t> trees;
  std::vector<std::size_t> d;
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> min_node;
  std::optional<std::size_t> rc_k;
  std::vector<std::string> transforms;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

int cmd_sweep(const SweepOptions& o) {
  ExperimentConfig cfg = load_experiment_config(o.config);
  if (o.data) {
    cfg.source = SourceSpec{};
    cfg.source.kind = SourceSpec::Kind::kCsv;
    cfg.source.train_csv = *o.data;
    cfg.source.n_test = 0;
    cfg.source.dims.clear();
  }
  if (!o.algos.empty()) {
    cfg.algorithms.clear();
    for (const auto& a : o.algos) cfg.algorithms.push_back({a, {}});
  }
  if (!o.d.empty()) {
    for (auto& a : cfg.algorithms) a.d = o.d;
  }
  if (o.trees) cfg.trees = *o.trees;
  if (!o.seeds.empty()) cfg.seeds = o.seeds;
  if (o.min_node) cfg.min_node_size = *o.min_node;
  if (o.rc_k) cfg.rc_nonzeros = *o.rc_k;
  if (!o.transforms.empty()) {
    cfg.transforms.clear();
    for (const auto& t : o.transforms) cfg.transforms.push_back(transform_kind_from_string(t));
  }
  if (o.out) cfg.output_dir = *o.out;
  if (o.threads) cfg.threads = *o.threads;

  const SweepResult result = run_sweep(cfg);
  write_sweep_outputs(result, cfg.output_dir);
  json record{{"command", "sweep"},
              {"name", cfg.name},
              {"cells", result.raw.size() + result.failures.size()},
              {"failed", result.failures.size()},
              {"out", cfg.output_dir.string()}};
  std::cout << record.dump() << '\n';
  if (!result.failures.empty()) {
    std::cerr << "error: " << result.failures.size()
              << " cell(s) failed; see failures.csv\n";
    return kExitUser;
  }
  return kExitOk;
}

// --- posterior -----------------------------------------------------------

struct PosteriorOptions {
  std::string model;
  std::optional<std::string> data;
  std::vector<std::size_t> dims{0, 1};
  std::vector<double> bounds;
  std::vector<std::size_t> resolution{50};
  std::string fill = "median";
  std::string out;
  unsigned threads = 0;
};

int cmd_posterior(const PosteriorOptions& o) {
  const Forest forest = load_model(o.model);
  const std::size_t p = forest.feature_count;
  if (o.dims.size() != 2) throw InvalidArgument("--dims takes two indices");
  if (o.resolution.empty() || o.resolution.size() > 2) {
    throw InvalidArgument("--resolution takes one or two values");
  }
  if (!o.bounds.empty() && o.bounds.size() != 4) {
    throw InvalidArgument("--bounds takes xmin,xmax,ymin,ymax");
  }
  for (std::size_t dim : o.dims) {
    if (dim >= p) {
      throw InvalidArgument("grid dimension " + std::to_string(dim) +
                            " out of range for a model with " + std::to_string(p) +
                            " features");
    }
  }

  GridSpec spec;
  spec.dim_x = o.dims[0];
  spec.dim_y = o.dims[1];
  spec.resolution_x = o.resolution[0];
  spec.resolution_y = o.resolution.back();
  std::optional<Dataset> data;
  if (o.data) {
    data = load_csv(*o.data);
    if (data->dimension() != p) {
      throw InvalidArgument("data has " + std::to_string(data->dimension()) +
                            " features, model expects " + std::to_string(p));
    }
    FillRule rule;
    if (o.fill == "median") {
      rule = FillRule::kMedian;
    } else if (o.fill == "mean") {
      rule = FillRule::kMean;
    } else {
      throw InvalidArgument("--fill must be median or mean");
    }
    spec.fill = fill_values(data->features, rule);
  } else {
    spec.fill = Vector::Zero(static_cast<Eigen::Index>(p));
    if (p > 2) std::clog << "[posterior] no --data; other coordinates fixed at 0\n";
  }
  if (!o.bounds.empty()) {
    spec.x_min = o.bounds[0];
    spec.x_max = o.bounds[1];
    spec.y_min = o.bounds[2];
    spec.y_max = o.bounds[3];
  } else if (data && data->size() > 0) {
    const auto& f = data->features;
    spec.x_min = f.col(static_cast<Eigen::Index>(spec.dim_x)).minCoeff();
    spec.x_max = f.col(static_cast<Eigen::Index>(spec.dim_x)).maxCoeff();
    spec.y_min = f.col(static_cast<Eigen::Index>(spec.dim_y)).minCoeff();
    spec.y_max = f.col(static_cast<Eigen::Index>(spec.dim_y)).maxCoeff();
  } else {
    throw InvalidArgument("posterior needs --bounds or --data");
  }

  const PosteriorGrid grid = posterior_grid(forest, spec, o.threads);
  Output out(o.out);
  write_posterior_grid_csv(out.stream(), spec, grid);
  out.close();
  return kExitOk;
}

// --- profile -------------------------------------------------------------

int cmd_profile(const std::string& results_path, const std::string& out_dir,
                std::optional<std::size_t> eval_size,
                std::optional<std::string> baseline) {
  ResultTable raw = read_results_csv(results_path);
  if (eval_size) {
    for (auto& r : raw) r.eval_count = *eval_size;
  }
  const ResultTable best = select_best_d(raw);
  const PerformanceProfile profile = performance_profile(best);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());
  const std::filesystem::path dir(out_dir);
  auto write = [&](const std::string& name, auto&& body) {
    Output out((dir / name).string());
    body(out.stream());
    out.close();
  };
  write("profile.csv", [&](std::ostream& s) { write_profile_csv(s, profile); });
  write("profile_auc.csv", [&](std::ostream& s) { write_auc_csv(s, profile); });
  if (baseline) {
    const auto curves = relative_error_curve(best, *baseline);
    write("curve.csv", [&](std::ostream& s) { write_curve_csv(s, curves); });
  }
  for (const auto& z : profile.zero_minimum_datasets) {
    std::clog << "[profile] zero minimum error on " << z << "; half-sample epsilon used\n";
  }
  json auc = json::object();
  for (const auto& a : profile.algorithms) auc[a.algorithm] = a.auc;
  std::cout << json{{"command", "profile"}, {"tau_max", profile.tau_max}, {"auc", auc}}.dump()
            << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Random projection forests: train, predict and run simulation sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rerf 0.1.0");

  const std::string algo_help = "rf|rc|rerf|rerf-r|rerf-d|rerf-dr|rotrf";

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train one forest on a CSV file");
  train_cmd->add_option("--config", train.config, "JSON file with the same keys as the flags");
  train_cmd->add_option("--data", train.data, "Training CSV (last column is the label)");
  train_cmd->add_option("--algo", train.algo, algo_help + " (default rerf)");
  train_cmd->add_option("--trees", train.trees, "Tree count (default 1000 if n <= 1000, else 500)");
  train_cmd->add_option("--d", train.d, "Candidate directions per node (default sqrt(p))");
  train_cmd->add_option("--seed", train.seed, "Random seed (default 0)");
  train_cmd->add_option("--min-node", train.min_node, "Minimum node size to split (default 10)");
  train_cmd->add_option("--max-depth", train.max_depth, "Depth limit");
  train_cmd->add_option("--rc-k", train.rc_k, "Nonzeros per Forest-RC direction (default 3)");
  train_cmd->add_flag("--no-bootstrap", train.no_bootstrap, "Grow every tree on all rows");
  train_cmd->add_option("--out", train.out, "Model file to write");
  train_cmd->add_option("--threads", train.threads, "Worker threads (0 = all cores)");

  std::string predict_model, predict_data, predict_out;
  unsigned predict_threads = 0;
  auto* predict_cmd = app.add_subcommand("predict", "Predict labels and posteriors");
  predict_cmd->add_option("--model", predict_model, "Model file")->required();
  predict_cmd->add_option("--data", predict_data, "CSV of features, optionally with labels")
      ->required();
  predict_cmd->add_option("--out", predict_out, "Predictions CSV (default stdout)");
  predict_cmd->add_option("--threads", predict_threads, "Worker threads (0 = all cores)");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment grid from a JSON config");
  sweep_cmd->add_option("--config", sweep.config, "Experiment JSON")->required();
  sweep_cmd->add_option("--data", sweep.data, "Use this CSV as the source");
  sweep_cmd->add_option("--algo", sweep.algos, algo_help + ", comma separated")
      ->delimiter(',');
  sweep_cmd->add_option("--trees", sweep.trees, "Tree count for every cell");
  sweep_cmd->add_option("--d", sweep.d, "d values for every algorithm")->delimiter(',');
  sweep_cmd->add_option("--seed", sweep.seeds, "Seeds, comma separated")->delimiter(',');
  sweep_cmd->add_option("--min-node", sweep.min_node, "Minimum node size to split");
  sweep_cmd->add_option("--rc-k", sweep.rc_k, "Nonzeros per Forest-RC direction");
  sweep_cmd->add_option("--transform", sweep.transforms,
                        "none|rotate|scale|affine|outliers, comma separated")
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep.out, "Output directory");
  sweep_cmd->add_option("--threads", sweep.threads, "Parallel cells (0 = all cores)");

  PosteriorOptions post;
  auto* post_cmd = app.add_subcommand("posterior", "Posterior estimates on a 2-D grid");
  post_cmd->add_option("--model", post.model, "Model file")->required();
  post_cmd->add_option("--data", post.data, "CSV used for fill values and default bounds");
  post_cmd->add_option("--dims", post.dims, "Two feature indices (default 0,1)")
      ->delimiter(',');
  post_cmd->add_option("--bounds", post.bounds, "xmin,xmax,ymin,ymax")->delimiter(',');
  post_cmd->add_option("--resolution", post.resolution, "Points per axis, N or NX,NY")
      ->delimiter(',');
  post_cmd->add_option("--fill", post.fill, "median|mean for the other coordinates");
  post_cmd->add_option("--out", post.out, "Grid CSV (default stdout)");
  post_cmd->add_option("--threads", post.threads, "Worker threads (0 = all cores)");

  std::string profile_results, profile_out = ".";
  std::optional<std::size_t> profile_eval;
  std::optional<std::string> profile_baseline;
  auto* profile_cmd =
      app.add_subcommand("profile", "Performance profile of a results CSV");
  profile_cmd->add_option("--results", profile_results, "results.csv or results_raw.csv")
      ->required();
  profile_cmd->add_option("--out", profile_out, "Output directory (default .)");
  profile_cmd->add_option("--eval-size", profile_eval,
                          "Evaluation set size, needed when a minimum error is 0");
  profile_cmd->add_option("--baseline", profile_baseline, "Also write curve.csv vs this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUser;
  }

  try {
    if (*train_cmd) return cmd_train(train);
    if (*predict_cmd) {
      return cmd_predict(predict_model, predict_data, predict_out, predict_threads);
    }
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*post_cmd) return cmd_posterior(post);
    if (*profile_cmd) {
      return cmd_profile(profile_results, profile_out, profile_eval, profile_baseline);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  }
  return kExitUser;
}

}  // namespace rerf::tools
