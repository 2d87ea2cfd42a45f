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

#include "rerf/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "rerf/errors.hpp"

namespace rerf {

namespace {

std::vector<std::string> split_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(std::move(field));
  return fields;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

bool parse_label_id(const std::string& text, long long& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size() && out >= 0;
}

}  // namespace

CsvTable parse_csv_table(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_line(line, line_no);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError("expected " + std::to_string(table.header.size()) +
                           " fields, found " + std::to_string(fields.size()),
                       line_no);
    }
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) throw ParseError("empty CSV file (no header row)", line_no == 0 ? 1 : line_no);
  return table;
}

CsvTable read_csv_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return parse_csv_table(buffer.str());
}

Matrix parse_features(const CsvTable& table, std::size_t feature_count) {
  Matrix x(static_cast<Eigen::Index>(table.rows.size()),
           static_cast<Eigen::Index>(feature_count));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (row.size() < feature_count) {
      throw ParseError("row has fewer than " + std::to_string(feature_count) + " features",
                       table.line_numbers[i]);
    }
    for (std::size_t j = 0; j < feature_count; ++j) {
      double v;
      if (!parse_double(row[j], v) || !std::isfinite(v)) {
        throw ParseError("non-numeric feature '" + row[j] + "' in column " +
                             std::to_string(j + 1),
                         table.line_numbers[i]);
      }
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return x;
}

Dataset dataset_from_table(const CsvTable& table) {
  if (table.header.size() < 2) {
    throw ParseError("need at least one feature column and a label column", 1);
  }
  if (table.rows.empty()) throw ParseError("CSV file has a header but no data rows", 1);
  const std::size_t p = table.header.size() - 1;

  Dataset data;
  data.features = parse_features(table, p);
  data.labels.resize(table.rows.size());

  bool numeric = true;
  long long max_id = 0;
  std::vector<long long> ids(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size() && numeric; ++i) {
    numeric = parse_label_id(table.rows[i][p], ids[i]);
    if (numeric) max_id = std::max(max_id, ids[i]);
  }
  if (numeric && max_id < (1 << 20)) {
    for (std::size_t i = 0; i < ids.size(); ++i) data.labels[i] = static_cast<Label>(ids[i]);
    data.class_count = static_cast<std::size_t>(max_id) + 1;
    for (std::size_t c = 0; c < data.class_count; ++c) {
      data.class_names.push_back(std::to_string(c));
    }
  } else {
    std::unordered_map<std::string, Label> index;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const std::string name = trim(table.rows[i][p]);
      auto [it, inserted] = index.emplace(name, static_cast<Label>(data.class_names.size()));
      if (inserted) data.class_names.push_back(name);
      data.labels[i] = it->second;
    }
    data.class_count = data.class_names.size();
  }
  return data;
}

Dataset load_csv(const std::filesystem::path& path) {
  return dataset_from_table(read_csv_table(path));
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (std::size_t j = 0; j < data.dimension(); ++j) out << 'x' << j << ',';
  out << "label\n";
  std::string line;
  for (std::size_t i = 0; i < data.size(); ++i) {
    line.clear();
    for (std::size_t j = 0; j < data.dimension(); ++j) {
      line += format_double(
          data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      line += ',';
    }
    line += data.class_name(data.labels[i]);
    line += '\n';
    out << line;
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace rerf
