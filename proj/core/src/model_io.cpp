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

#include "rerf/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "json.hpp"
#include "rerf/errors.hpp"

namespace rerf {

static_assert(std::endian::native == std::endian::little,
              "model files are written in host byte order");

namespace {

using nlohmann::json;

constexpr char kMagic[8] = {'R', 'E', 'R', 'F', 'M', 'O', 'D', 'L'};
constexpr char kEndMarker[4] = {'E', 'N', 'D', 'M'};

class Writer {
 public:
  template <typename T>
  void put(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    char raw[sizeof(T)];
    std::memcpy(raw, &value, sizeof(T));
    out_.append(raw, sizeof(T));
  }
  void bytes(const char* data, std::size_t size) { out_.append(data, size); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  template <typename T>
  T get(const char* what) {
    static_assert(std::is_trivially_copyable_v<T>);
    need(sizeof(T), what);
    T value;
    std::memcpy(&value, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string_view bytes(std::size_t size, const char* what) {
    need(size, what);
    auto view = in_.substr(pos_, size);
    pos_ += size;
    return view;
  }

  // Element count that must fit in the remaining bytes.
  std::size_t count(std::size_t element_size, const char* what) {
    const auto n = get<std::uint64_t>(what);
    if (element_size != 0 && n > (in_.size() - pos_) / element_size) {
      throw ParseError(std::string("model file truncated or corrupt: ") + what +
                           " count " + std::to_string(n) + " exceeds the payload",
                       0);
    }
    return static_cast<std::size_t>(n);
  }

  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t size, const char* what) const {
    if (in_.size() - pos_ < size) {
      throw ParseError(std::string("model file truncated while reading ") + what, 0);
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

json config_to_json(const TrainConfig& c) {
  return json{
      {"tree_count", c.tree_count},
      {"candidate_count", c.candidate_count},
      {"projection",
       {{"family", to_string(c.projection.family)},
        {"rc_nonzeros", c.projection.rc_nonzeros},
        {"per_tree_rotation", c.projection.per_tree_rotation},
        {"mean_difference", c.projection.mean_difference}}},
      {"min_node_size", c.min_node_size},
      {"max_depth", c.max_depth ? json(*c.max_depth) : json(nullptr)},
      {"bootstrap", c.bootstrap},
      {"rank_transform", c.rank_transform},
      {"seed", c.seed},
  };
}

TrainConfig config_from_json(const json& j) {
  TrainConfig c;
  c.tree_count = j.at("tree_count").get<std::size_t>();
  c.candidate_count = j.at("candidate_count").get<std::size_t>();
  const auto& p = j.at("projection");
  c.projection.family = projection_family_from_string(p.at("family").get<std::string>());
  c.projection.rc_nonzeros = p.at("rc_nonzeros").get<std::uint32_t>();
  c.projection.per_tree_rotation = p.at("per_tree_rotation").get<bool>();
  c.projection.mean_difference = p.at("mean_difference").get<bool>();
  c.min_node_size = j.at("min_node_size").get<std::size_t>();
  if (!j.at("max_depth").is_null()) c.max_depth = j.at("max_depth").get<std::size_t>();
  c.bootstrap = j.at("bootstrap").get<bool>();
  c.rank_transform = j.at("rank_transform").get<bool>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

void write_tree(Writer& w, const Tree& tree) {
  w.put<std::uint64_t>(tree.nodes.size());
  for (const auto& n : tree.nodes) {
    w.put(n.left);
    w.put(n.right);
    w.put(n.threshold);
    w.put(n.offset);
    w.put(n.length);
  }
  w.put<std::uint64_t>(tree.directions.size());
  for (const auto& e : tree.directions) {
    w.put(e.index);
    w.put(e.weight);
  }
  w.put<std::uint64_t>(tree.posteriors.size());
  for (const double v : tree.posteriors) w.put(v);
  w.put<std::uint64_t>(static_cast<std::uint64_t>(tree.rotation.rows()));
  for (Eigen::Index i = 0; i < tree.rotation.size(); ++i) w.put(tree.rotation.data()[i]);
  w.put<std::uint64_t>(tree.in_bag.size());
  for (const auto i : tree.in_bag) w.put(i);
}

Tree read_tree(Reader& r, std::size_t class_count) {
  Tree tree;
  tree.class_count = class_count;
  tree.nodes.resize(r.count(24, "nodes"));
  for (auto& n : tree.nodes) {
    n.left = r.get<std::int32_t>("node");
    n.right = r.get<std::int32_t>("node");
    n.threshold = r.get<double>("node");
    n.offset = r.get<std::uint32_t>("node");
    n.length = r.get<std::uint32_t>("node");
  }
  tree.directions.resize(r.count(12, "directions"));
  for (auto& e : tree.directions) {
    e.index = r.get<std::uint32_t>("direction");
    e.weight = r.get<double>("direction");
  }
  tree.posteriors.resize(r.count(8, "posteriors"));
  for (auto& v : tree.posteriors) v = r.get<double>("posterior");
  const std::size_t dim = r.count(0, "rotation");
  if (dim > 0) {
    if (dim > (1u << 16)) throw ParseError("implausible rotation dimension", 0);
    const auto bytes = r.bytes(dim * dim * sizeof(double), "rotation");
    tree.rotation.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::memcpy(tree.rotation.data(), bytes.data(), bytes.size());
  }
  tree.in_bag.resize(r.count(4, "in-bag rows"));
  for (auto& i : tree.in_bag) i = r.get<std::uint32_t>("in-bag row");
  return tree;
}

}  // namespace

std::string serialize_model(const Forest& forest) {
  json header{
      {"format", "rerf-forest"},
      {"version", kModelFormatVersion},
      {"feature_count", forest.feature_count},
      {"class_count", forest.class_count},
      {"class_names", forest.class_names},
      {"tree_count", forest.trees.size()},
      {"rank_sample_count", forest.ranks ? forest.ranks->sample_count() : 0},
      {"config", config_to_json(forest.config)},
  };
  const std::string text = header.dump();

  Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.put<std::uint32_t>(kModelFormatVersion);
  w.put<std::uint64_t>(text.size());
  w.bytes(text.data(), text.size());
  if (forest.ranks) {
    for (const auto& column : forest.ranks->sorted_values()) {
      for (const double v : column) w.put(v);
    }
  }
  for (const auto& tree : forest.trees) write_tree(w, tree);
  w.bytes(kEndMarker, sizeof(kEndMarker));
  return w.take();
}

Forest deserialize_model(std::string_view bytes) {
  Reader r(bytes);
  const auto magic = r.bytes(sizeof(kMagic), "magic");
  if (std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0) {
    throw ParseError("not a rerf model file (bad magic)", 0);
  }
  const auto version = r.get<std::uint32_t>("version");
  if (version != kModelFormatVersion) {
    throw ParseError("unsupported model version " + std::to_string(version) +
                         " (expected " + std::to_string(kModelFormatVersion) + ")",
                     0);
  }
  const std::size_t header_size = r.count(1, "header");
  const auto header_text = r.bytes(header_size, "header");

  Forest forest;
  std::size_t tree_count = 0;
  std::size_t rank_samples = 0;
  try {
    const json header = json::parse(header_text);
    if (header.at("format").get<std::string>() != "rerf-forest" ||
        header.at("version").get<std::uint32_t>() != version) {
      throw ParseError("model header does not describe a rerf forest", 0);
    }
    forest.feature_count = header.at("feature_count").get<std::size_t>();
    forest.class_count = header.at("class_count").get<std::size_t>();
    forest.class_names = header.at("class_names").get<std::vector<std::string>>();
    tree_count = header.at("tree_count").get<std::size_t>();
    rank_samples = header.at("rank_sample_count").get<std::size_t>();
    forest.config = config_from_json(header.at("config"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad model header: ") + e.what(), 0);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("bad model header: ") + e.what(), 0);
  }
  if (forest.feature_count == 0 || forest.class_count == 0) {
    throw ParseError("model header has zero features or classes", 0);
  }
  if (tree_count != forest.config.tree_count) {
    throw ParseError("model header tree counts disagree", 0);
  }
  if (forest.config.rank_transform != (rank_samples > 0)) {
    throw ParseError("model header rank transform fields disagree", 0);
  }

  if (rank_samples > 0) {
    std::vector<std::vector<double>> sorted(forest.feature_count);
    for (auto& column : sorted) {
      const auto raw = r.bytes(rank_samples * sizeof(double), "rank transform");
      column.resize(rank_samples);
      std::memcpy(column.data(), raw.data(), raw.size());
    }
    try {
      forest.ranks = RankTransform::from_sorted_values(std::move(sorted));
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string("bad rank transform: ") + e.what(), 0);
    }
  }

  forest.trees.reserve(tree_count);
  for (std::size_t t = 0; t < tree_count; ++t) {
    Tree tree = read_tree(r, forest.class_count);
    try {
      tree.validate(forest.feature_count);
    } catch (const InvalidArgument& e) {
      throw ParseError("tree " + std::to_string(t) + ": " + e.what(), 0);
    }
    forest.trees.push_back(std::move(tree));
  }
  const auto end = r.bytes(sizeof(kEndMarker), "end marker");
  if (std::memcmp(end.data(), kEndMarker, sizeof(kEndMarker)) != 0 || !r.done()) {
    throw ParseError("model file has a bad end marker or trailing bytes", 0);
  }
  return forest;
}

void save_model(const Forest& forest, const std::filesystem::path& path) {
  const std::string bytes = serialize_model(forest);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

Forest load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return deserialize_model(buffer.str());
}

}  // namespace rerf
