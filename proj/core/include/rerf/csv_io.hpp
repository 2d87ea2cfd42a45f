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
#include <filesystem>
#include <string>
#include <vector>

#include "rerf/dataset.hpp"

namespace rerf {

// Raw CSV: one header row plus data rows. Empty lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

// Throws IoError if the file cannot be opened, ParseError (with a line
// number) on an empty file or ragged rows.
CsvTable read_csv_table(const std::filesystem::path& path);
CsvTable parse_csv_table(const std::string& text);

// Parses features from the first `feature_count` columns.
Matrix parse_features(const CsvTable& table, std::size_t feature_count);

// Builds a labelled dataset: every column but the last is a feature, the
// last is the label. Labels that are all non-negative integers are used as
// class ids directly; otherwise names are mapped to ids in first-appearance
// order. Throws ParseError on non-numeric features or an empty body.
Dataset dataset_from_table(const CsvTable& table);
Dataset load_csv(const std::filesystem::path& path);

// Header x0..x{p-1},label; features in shortest round-trip form.
void save_csv(const Dataset& data, const std::filesystem::path& path);
std::string format_double(double value);

}  // namespace rerf
