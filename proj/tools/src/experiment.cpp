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

#include "rerf_tools/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <tuple>

#include "rerf/csv_io.hpp"
#include "rerf/errors.hpp"
#include "rerf/forest.hpp"
#include "rerf/parallel.hpp"
#include "rerf_tools/algorithms.hpp"

namespace rerf::tools {

namespace {

using nlohmann::json;

// Stream ids for derive_seed; the base data for (seed, p) is shared by every
// transform so transform studies compare paired samples.
constexpr std::uint64_t kTrainStream = 1'000'000;
constexpr std::uint64_t kTestStream = 2'000'000;
constexpr std::uint64_t kTransformStream = 3'000'000;
constexpr std::uint64_t kForestStream = 4'000'000;

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw InvalidArgument("config: '" + key + "' " + why);
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) bad_key(where, "must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      bad_key(where.empty() ? key : where + "." + key, "is not a recognised key");
    }
  }
}

std::size_t get_count(const json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    bad_key(key, "must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

double get_real(const json& j, const std::string& key) {
  if (!j.is_number()) bad_key(key, "must be a number");
  return j.get<double>();
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) bad_key(key, "must be a string");
  return j.get<std::string>();
}

std::vector<std::size_t> get_counts(const json& j, const std::string& key) {
  std::vector<std::size_t> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(get_count(v, key));
  } else {
    out.push_back(get_count(j, key));
  }
  return out;
}

SourceSpec parse_source(const json& j) {
  SourceSpec s;
  if (j.contains("csv")) {
    check_keys(j, "source", {"csv", "test_csv"});
    s.kind = SourceSpec::Kind::kCsv;
    s.train_csv = get_string(j["csv"], "source.csv");
    if (j.contains("test_csv")) s.test_csv = get_string(j["test_csv"], "source.test_csv");
    s.n_test = 0;
    s.dims.clear();
    return s;
  }
  check_keys(j, "source", {"generator", "n", "n_test", "p", "relevant", "noise_sd"});
  const std::string gen =
      j.contains("generator") ? get_string(j["generator"], "source.generator") : "";
  if (gen == "sparse_parity") {
    s.kind = SourceSpec::Kind::kSparseParity;
  } else if (gen == "trunk") {
    s.kind = SourceSpec::Kind::kTrunk;
    s.n_train = 100;
    s.n_test = 10000;
    s.dims = {10};
  } else {
    bad_key("source.generator", "must be sparse_parity or trunk");
  }
  if (j.contains("n")) s.n_train = get_count(j["n"], "source.n");
  if (j.contains("n_test")) s.n_test = get_count(j["n_test"], "source.n_test");
  if (j.contains("p")) s.dims = get_counts(j["p"], "source.p");
  if (j.contains("relevant")) s.relevant = get_count(j["relevant"], "source.relevant");
  if (j.contains("noise_sd")) s.noise_sd = get_real(j["noise_sd"], "source.noise_sd");
  return s;
}

AlgorithmSpec parse_algorithm(const json& j) {
  AlgorithmSpec a;
  if (j.is_string()) {
    a.name = j.get<std::string>();
    return a;
  }
  check_keys(j, "algorithms[]", {"name", "d"});
  if (!j.contains("name")) bad_key("algorithms[].name", "is required");
  a.name = get_string(j["name"], "algorithms[].name");
  if (j.contains("d") && !(j["d"].is_string() && j["d"] == "grid")) {
    a.d = get_counts(j["d"], "algorithms[].d");
    if (a.d.empty()) bad_key("algorithms[].d", "must not be empty");
  }
  return a;
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

struct Instance {
  std::string name;
  std::string group;
  Dataset train;
  Dataset test;  // empty: out-of-bag evaluation
  std::uint64_t forest_seed = 0;
};

std::string source_label(const SourceSpec& s) {
  switch (s.kind) {
    case SourceSpec::Kind::kSparseParity: return "sparse_parity";
    case SourceSpec::Kind::kTrunk: return "trunk";
    case SourceSpec::Kind::kCsv: return s.train_csv.stem().string();
  }
  return "data";
}

Dataset generate(const SourceSpec& s, std::size_t p, std::size_t n, Rng& rng) {
  if (s.kind == SourceSpec::Kind::kSparseParity) {
    SparseParityConfig c;
    c.n = n;
    c.p = p;
    c.relevant = s.relevant;
    c.noise_sd = s.noise_sd;
    return gen_sparse_parity(c, rng);
  }
  TrunkConfig c;
  c.n = n;
  c.p = p;
  return gen_trunk(c, rng);
}

// The untransformed data for one (p, seed); p = 0 for CSV sources.
struct BaseData {
  Dataset train;
  Dataset test;
};

BaseData make_base(const ExperimentConfig& cfg, std::size_t p, std::uint64_t seed) {
  BaseData base;
  const auto& s = cfg.source;
  if (s.kind == SourceSpec::Kind::kCsv) {
    base.train = load_csv(s.train_csv);
    if (!s.test_csv.empty()) {
      base.test = load_csv(s.test_csv);
      if (base.test.dimension() != base.train.dimension()) {
        throw InvalidArgument("test CSV has " + std::to_string(base.test.dimension()) +
                              " features, training CSV has " +
                              std::to_string(base.train.dimension()));
      }
    }
    return base;
  }
  Rng train_rng(derive_seed(seed, kTrainStream + p));
  base.train = generate(s, p, s.n_train, train_rng);
  if (s.n_test > 0) {
    Rng test_rng(derive_seed(seed, kTestStream + p));
    base.test = generate(s, p, s.n_test, test_rng);
  }
  return base;
}

Instance make_instance(const ExperimentConfig& cfg, const BaseData& base,
                       TransformKind kind, std::uint64_t seed) {
  const std::size_t p = base.train.dimension();
  Instance inst;
  const bool generated = cfg.source.kind != SourceSpec::Kind::kCsv;
  inst.group = source_label(cfg.source) + (generated ? "_p" + std::to_string(p) : "") +
               "_" + to_string(kind);
  inst.name = inst.group + "_s" + std::to_string(seed);
  inst.forest_seed = derive_seed(seed, kForestStream + (generated ? p : 0));

  TransformSpec spec;
  spec.kind = kind;
  spec.seed = derive_seed(seed, kTransformStream + (generated ? p : 0));
  spec.outlier_fraction = cfg.outlier_fraction;
  spec.outlier_scale = cfg.outlier_scale;
  spec.validate();

  inst.train = base.train;
  inst.test = base.test;
  if (kind == TransformKind::kOutliers) {
    // Outliers contaminate training only; the test set measures the clean task.
    inst.train = apply_transform(base.train, spec);
  } else if (kind != TransformKind::kNone) {
    const FittedTransform ft = fit_transform(spec, p);
    inst.train.features = ft.apply(base.train.features);
    if (inst.test.size() > 0) inst.test.features = ft.apply(base.test.features);
  }
  return inst;
}

struct Cell {
  std::string algorithm;
  std::size_t d = 0;
};

struct CellOutcome {
  bool ok = false;
  ResultRow row;
  std::string message;
};

CellOutcome run_cell(const ExperimentConfig& cfg, const Instance& inst, const Cell& cell) {
  CellOutcome out;
  out.row.algorithm = cell.algorithm;
  out.row.dataset = inst.name;
  out.row.d = cell.d;
  try {
    TrainConfig tc;
    tc.tree_count = cfg.trees.value_or(default_tree_count(inst.train.size()));
    tc.candidate_count = cell.d;
    tc.min_node_size = cfg.min_node_size;
    tc.seed = inst.forest_seed;
    tc = configure_algorithm(cell.algorithm, tc, cfg.rc_nonzeros);
    auto [forest, seconds] = timed([&] { return fit(inst.train, tc, 1); });
    out.row.train_seconds = seconds;
    if (inst.test.size() > 0) {
      const Labels predicted = predict(forest, inst.test.features, 1);
      out.row.error = misclassification_rate(predicted, inst.test.labels);
      out.row.eval_count = inst.test.size();
    } else {
      const OobResult oob = oob_evaluate(forest, inst.train, 1);
      if (oob.covered == 0) throw DegenerateInput("no out-of-bag rows to evaluate");
      out.row.error = oob.error;
      out.row.eval_count = oob.covered;
    }
    out.ok = true;
  } catch (const std::exception& e) {
    out.message = e.what();
  }
  return out;
}

std::vector<SummaryRow> summarize(const ResultTable& best,
                                  const std::map<std::string, std::string>& group_of,
                                  const std::string& baseline) {
  std::map<std::string, double> baseline_error;
  for (const auto& r : best) {
    if (r.algorithm == baseline) baseline_error[r.dataset] = r.error;
  }
  struct Acc {
    std::vector<double> errors;
    double relative = 0.0;
    std::size_t relative_count = 0;
    double seconds = 0.0;
  };
  std::map<std::pair<std::string, std::string>, Acc> acc;
  for (const auto& r : best) {
    Acc& a = acc[{r.algorithm, group_of.at(r.dataset)}];
    a.errors.push_back(r.error);
    a.seconds += r.train_seconds;
    if (auto it = baseline_error.find(r.dataset); it != baseline_error.end()) {
      a.relative += r.error - it->second;
      ++a.relative_count;
    }
  }
  std::vector<SummaryRow> out;
  for (const auto& [key, a] : acc) {
    SummaryRow s;
    s.algorithm = key.first;
    s.group = key.second;
    s.seeds = a.errors.size();
    const double k = static_cast<double>(s.seeds);
    double sum = 0.0;
    for (double e : a.errors) sum += e;
    s.mean_error = sum / k;
    if (s.seeds > 1) {
      double ss = 0.0;
      for (double e : a.errors) ss += (e - s.mean_error) * (e - s.mean_error);
      s.stderr_error = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
    }
    if (a.relative_count > 0) {
      s.mean_relative_error = a.relative / static_cast<double>(a.relative_count);
    }
    s.mean_train_seconds = a.seconds / k;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (algorithms.empty()) bad_key("algorithms", "must not be empty");
  for (const auto& a : algorithms) {
    configure_algorithm(a.name, TrainConfig{}, rc_nonzeros);
    for (std::size_t d : a.d) {
      if (d == 0) bad_key("algorithms[].d", "values must be >= 1");
    }
  }
  if (seeds.empty()) bad_key("seeds", "must not be empty");
  if (transforms.empty()) bad_key("transforms", "must not be empty");
  if (trees && *trees == 0) bad_key("trees", "must be >= 1 or \"auto\"");
  if (min_node_size == 0) bad_key("min_node", "must be >= 1");
  if (rc_nonzeros == 0) bad_key("rc_k", "must be >= 1");
  if (source.kind == SourceSpec::Kind::kCsv) {
    if (source.train_csv.empty()) bad_key("source.csv", "must name a file");
    for (auto t : transforms) {
      if (t == TransformKind::kOutliers) {
        bad_key("transforms", "outliers need a generator source, not a CSV");
      }
    }
  } else {
    if (source.dims.empty()) bad_key("source.p", "must not be empty");
    for (std::size_t p : source.dims) {
      if (p == 0) bad_key("source.p", "values must be >= 1");
    }
    if (source.n_train == 0) bad_key("source.n", "must be >= 1");
    if (source.kind == SourceSpec::Kind::kSparseParity) {
      for (std::size_t p : source.dims) {
        SparseParityConfig c;
        c.n = source.n_train;
        c.p = p;
        c.relevant = source.relevant;
        c.noise_sd = source.noise_sd;
        c.validate();
      }
    } else {
      for (std::size_t p : source.dims) {
        TrunkConfig c;
        c.n = source.n_train;
        c.p = p;
        c.validate();
      }
    }
  }
  TransformSpec t;
  t.outlier_fraction = outlier_fraction;
  t.outlier_scale = outlier_scale;
  t.kind = TransformKind::kOutliers;
  t.validate();
}

ExperimentConfig parse_experiment_config(const json& j) {
  check_keys(j, "",
             {"name", "source", "algorithms", "transforms", "trees", "seeds", "min_node",
              "rc_k", "baseline", "outlier_fraction", "outlier_scale", "out", "threads"});
  ExperimentConfig c;
  if (j.contains("name")) c.name = get_string(j["name"], "name");
  if (!j.contains("source")) bad_key("source", "is required");
  c.source = parse_source(j["source"]);
  if (!j.contains("algorithms") || !j["algorithms"].is_array()) {
    bad_key("algorithms", "must be a list");
  }
  for (const auto& a : j["algorithms"]) c.algorithms.push_back(parse_algorithm(a));
  if (j.contains("transforms")) {
    const json& t = j["transforms"];
    c.transforms.clear();
    const json list = t.is_array() ? t : json::array({t});
    for (const auto& v : list) {
      c.transforms.push_back(transform_kind_from_string(get_string(v, "transforms")));
    }
  }
  if (j.contains("trees")) {
    const json& t = j["trees"];
    if (t.is_string()) {
      if (t != "auto") bad_key("trees", "must be a count or \"auto\"");
      c.trees.reset();
    } else {
      c.trees = get_count(t, "trees");
    }
  }
  if (j.contains("seeds")) {
    c.seeds.clear();
    const json& s = j["seeds"];
    const json list = s.is_array() ? s : json::array({s});
    for (const auto& v : list) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        bad_key("seeds", "must be non-negative integers");
      }
      c.seeds.push_back(v.get<std::uint64_t>());
    }
  }
  if (j.contains("min_node")) c.min_node_size = get_count(j["min_node"], "min_node");
  if (j.contains("rc_k")) c.rc_nonzeros = get_count(j["rc_k"], "rc_k");
  if (j.contains("baseline")) c.baseline = get_string(j["baseline"], "baseline");
  if (j.contains("outlier_fraction")) {
    c.outlier_fraction = get_real(j["outlier_fraction"], "outlier_fraction");
  }
  if (j.contains("outlier_scale")) {
    c.outlier_scale = get_real(j["outlier_scale"], "outlier_scale");
  }
  if (j.contains("out")) c.output_dir = get_string(j["out"], "out");
  if (j.contains("threads")) {
    c.threads = static_cast<unsigned>(get_count(j["threads"], "threads"));
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config " + path.string() + ": " + e.what());
  }
  ExperimentConfig c = parse_experiment_config(j);
  // Relative CSV paths are resolved against the config file's directory.
  const auto base = path.parent_path();
  if (c.source.kind == SourceSpec::Kind::kCsv) {
    if (c.source.train_csv.is_relative()) c.source.train_csv = base / c.source.train_csv;
    if (!c.source.test_csv.empty() && c.source.test_csv.is_relative()) {
      c.source.test_csv = base / c.source.test_csv;
    }
  }
  return c;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  const std::vector<std::size_t> dims = config.source.kind == SourceSpec::Kind::kCsv
                                            ? std::vector<std::size_t>{0}
                                            : config.source.dims;
  for (std::size_t p : dims) {
    for (std::uint64_t seed : config.seeds) {
      const BaseData base = make_base(config, p, seed);
      const std::size_t dim = base.train.dimension();
      for (TransformKind kind : config.transforms) {
        const Instance inst = make_instance(config, base, kind, seed);
        result.group_of[inst.name] = inst.group;

        std::vector<Cell> cells;
        for (const auto& a : config.algorithms) {
          const auto grid = a.d.empty() ? default_d_grid(dim) : a.d;
          for (std::size_t d : grid) cells.push_back({a.name, d});
        }
        std::vector<CellOutcome> outcomes(cells.size());
        parallel_for(cells.size(), config.threads, [&](std::size_t i) {
          outcomes[i] = run_cell(config, inst, cells[i]);
        });

        std::size_t failed = 0;
        for (auto& o : outcomes) {
          if (o.ok) {
            result.raw.push_back(std::move(o.row));
          } else {
            ++failed;
            result.failures.push_back({o.row.algorithm, o.row.dataset, o.row.d, o.message});
          }
        }
        std::clog << "[sweep] " << inst.name << ": " << cells.size() - failed << '/'
                  << cells.size() << " cells ok\n";
      }
    }
  }

  result.best = select_best_d(result.raw);

  std::set<std::string> algorithms;
  for (const auto& a : config.algorithms) algorithms.insert(a.name);
  std::map<std::string, std::set<std::string>> present;  // dataset -> algorithms
  for (const auto& r : result.best) present[r.dataset].insert(r.algorithm);

  if (algorithms.count(config.baseline)) {
    ResultTable with_baseline;
    for (const auto& r : result.best) {
      if (present[r.dataset].count(config.baseline)) with_baseline.push_back(r);
    }
    if (!with_baseline.empty()) {
      result.curves = relative_error_curve(with_baseline, config.baseline);
    }
  }
  if (algorithms.size() >= 2) {
    ResultTable complete;
    for (const auto& r : result.best) {
      if (present[r.dataset] == algorithms) complete.push_back(r);
    }
    if (!complete.empty()) result.profile = performance_profile(complete);
  }
  result.summary = summarize(result.best, result.group_of, config.baseline);
  return result;
}

void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  auto write = [&](const std::string& file, auto&& body) {
    const auto path = dir / file;
    std::ofstream out = open_output(path);
    body(out);
    close_output(out, path);
  };

  write("results_raw.csv", [&](std::ostream& o) { write_results_csv(o, result.raw); });
  write("results.csv", [&](std::ostream& o) { write_results_csv(o, result.best); });
  write("curve.csv", [&](std::ostream& o) { write_curve_csv(o, result.curves); });
  if (result.profile) {
    write("profile.csv", [&](std::ostream& o) { write_profile_csv(o, *result.profile); });
    write("profile_auc.csv", [&](std::ostream& o) { write_auc_csv(o, *result.profile); });
  }
  write("summary.csv", [&](std::ostream& o) {
    o << "algorithm,dataset,seeds,mean_error,stderr_error,mean_relative_error\n";
    for (const auto& s : result.summary) {
      o << csv_text(s.algorithm) << ',' << csv_text(s.group) << ',' << s.seeds << ','
        << format_double(s.mean_error) << ',' << format_double(s.stderr_error) << ','
        << format_double(s.mean_relative_error) << '\n';
    }
  });
  write("timing.csv", [&](std::ostream& o) {
    o << "algorithm,dataset,mean_train_seconds\n";
    for (const auto& s : result.summary) {
      o << csv_text(s.algorithm) << ',' << csv_text(s.group) << ','
        << format_double(s.mean_train_seconds) << '\n';
    }
  });
  // Files that this run does not produce are removed so a reused directory
  // never mixes outputs of two runs.
  if (!result.profile) {
    std::filesystem::remove(dir / "profile.csv", ec);
    std::filesystem::remove(dir / "profile_auc.csv", ec);
  }
  std::filesystem::remove(dir / "failures.csv", ec);
  if (!result.failures.empty()) {
    write("failures.csv", [&](std::ostream& o) {
      o << "algorithm,dataset,d,message\n";
      for (const auto& f : result.failures) {
        o << csv_text(f.algorithm) << ',' << csv_text(f.dataset) << ',' << f.d << ','
          << csv_text(f.message) << '\n';
      }
    });
  }
}

}  // namespace rerf::tools
