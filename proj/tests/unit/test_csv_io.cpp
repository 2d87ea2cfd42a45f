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

#include <filesystem>
#include <fstream>

#include "rerf/csv_io.hpp"
#include "rerf/errors.hpp"
#include "rerf/simdata.hpp"

namespace rerf {
namespace {

class CsvIo : public ::testing::Test {
 protected:
  std::filesystem::path dir_ = std::filesystem::temp_directory_path() / "rerf_csv_test";
  void SetUp() override { std::filesystem::create_directories(dir_); }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path;
  }
};

std::size_t parse_error_line(const std::string& text) {
  try {
    dataset_from_table(parse_csv_table(text));
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST_F(CsvIo, SingleRow) {
  const Dataset d = load_csv(write("one.csv", "a,b,label\n1.5,2.0,0\n"));
  EXPECT_EQ(d.size(), 1u);
  EXPECT_EQ(d.dimension(), 2u);
  EXPECT_EQ(d.labels, (Labels{0}));
  EXPECT_EQ(d.features(0, 0), 1.5);
}

TEST_F(CsvIo, StringLabelsMapInFirstAppearanceOrder) {
  const Dataset d = load_csv(write("s.csv", "x,label\n1,cat\n2,dog\n3,cat\n"));
  EXPECT_EQ(d.labels, (Labels{0, 1, 0}));
  EXPECT_EQ(d.class_names, (std::vector<std::string>{"cat", "dog"}));
  EXPECT_EQ(d.class_count, 2u);
}

TEST_F(CsvIo, IntegerLabelsAreUsedDirectly) {
  const Dataset d = load_csv(write("i.csv", "x,label\n1,2\n2,0\n"));
  EXPECT_EQ(d.labels, (Labels{2, 0}));
  EXPECT_EQ(d.class_count, 3u);
}

TEST_F(CsvIo, TrunkRoundTripIsExact) {
  Rng rng(1);
  const Dataset d = gen_trunk({100, 10}, rng);
  const auto path = dir_ / "trunk.csv";
  save_csv(d, path);
  const Dataset back = load_csv(path);
  EXPECT_EQ(back.labels, d.labels);
  EXPECT_LE((back.features - d.features).cwiseAbs().maxCoeff(), 1e-15);
}

TEST_F(CsvIo, QuotedFieldsAndBlankLines) {
  const CsvTable t = parse_csv_table("a,\"b,c\"\n\n1,\"x\"\"y\"\n");
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b,c"}));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][1], "x\"y");
  EXPECT_EQ(t.line_numbers[0], 3u);
}

TEST_F(CsvIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("a,b,label\n1,2,0\n1,2\n"), 3u);
  EXPECT_EQ(parse_error_line("a,label\n1,0\nfoo,1\n"), 3u);
  EXPECT_THROW(parse_csv_table(""), ParseError);
  EXPECT_THROW(dataset_from_table(parse_csv_table("a,label\n")), ParseError);
}

TEST_F(CsvIo, MissingFileIsAnIoError) {
  EXPECT_THROW(load_csv(dir_ / "absent.csv"), IoError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  const double v = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(v)), v);
}

}  // namespace
}  // namespace rerf
