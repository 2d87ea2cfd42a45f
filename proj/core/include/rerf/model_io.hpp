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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "rerf/forest.hpp"

namespace rerf {

// Model file layout (little-endian):
//   "RERFMODL"  u32 version  u64 header_size  header (JSON: config, class
//   count, class names, feature count, tree count, rank sample count)
//   [rank transform: p columns of sorted training values]
//   per tree: nodes, directions, posteriors, rotation (dim + row-major
//   values), in-bag rows
//   "ENDM"
inline constexpr std::uint32_t kModelFormatVersion = 1;

std::string serialize_model(const Forest& forest);

// Throws ParseError on a malformed or unsupported payload.
Forest deserialize_model(std::string_view bytes);

// Throw IoError when the file cannot be written / read.
void save_model(const Forest& forest, const std::filesystem::path& path);
Forest load_model(const std::filesystem::path& path);

}  // namespace rerf
