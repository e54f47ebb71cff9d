// Copyright 2026 The Zoomtune Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zoomtune/csv_output.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "zoomtune/errors.hpp"

namespace zoomtune {
namespace {

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

AggregateResult two_methods() {
  AggregateResult r;
  r.methods.push_back({"cdt", {0.1, 0.25, 1.0 / 3.0}, {0.0, 0.01, 0.02}, 1.0 / 3.0, 0.02, 0.5});
  r.methods.push_back({"theory", {0.2, 0.4, 0.7}, {0.0, 1e-17, 0.3}, 0.7, 0.3, 0.0});
  return r;
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(0.1), "0.1");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(third)), third);
}

TEST(CurvesCsvTest, EmptyResultIsHeaderOnly) {
  std::ostringstream os;
  write_curves_csv(os, AggregateResult{});
  EXPECT_EQ(os.str(), "round,method,mean_cum_regret,std_cum_regret\n");
}

TEST(CurvesCsvTest, RowsOrderedByRoundThenMethod) {
  std::ostringstream os;
  write_curves_csv(os, two_methods());
  const std::string s = os.str();
  // header + 6 rows + final header + 2 final rows
  EXPECT_EQ(count_lines(s), 10u);
  std::istringstream in(s);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, "1,cdt,0.1,0");
  std::getline(in, line);
  EXPECT_EQ(line, "1,theory,0.2,0");
  std::getline(in, line);
  EXPECT_EQ(line, "2,cdt,0.25,0.01");
  EXPECT_NE(s.find("# final,theory,0.7,0.3,0\n"), std::string::npos);
}

TEST(CurvesCsvTest, ReadBackIsExact) {
  const AggregateResult a = two_methods();
  std::stringstream ss;
  write_curves_csv(ss, a);
  const AggregateResult b = read_curves_csv(ss);
  ASSERT_EQ(b.methods.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(b.methods[i].method, a.methods[i].method);
    EXPECT_EQ(b.methods[i].mean, a.methods[i].mean);
    EXPECT_EQ(b.methods[i].std, a.methods[i].std);
    EXPECT_EQ(b.methods[i].final_mean, a.methods[i].final_mean);
    EXPECT_EQ(b.methods[i].final_std, a.methods[i].final_std);
    EXPECT_EQ(b.methods[i].wall_seconds, a.methods[i].wall_seconds);
  }
}

TEST(CurvesCsvTest, ReaderRejectsMalformedInput) {
  std::istringstream no_header("1,cdt,0.1,0\n");
  EXPECT_THROW(read_curves_csv(no_header), InputError);
  std::istringstream bad_number("round,method,mean_cum_regret,std_cum_regret\n1,cdt,x,0\n");
  EXPECT_THROW(read_curves_csv(bad_number), InputError);
  std::istringstream gap("round,method,mean_cum_regret,std_cum_regret\n2,cdt,0.1,0\n");
  EXPECT_THROW(read_curves_csv(gap), InputError);
  std::istringstream empty("");
  EXPECT_THROW(read_curves_csv(empty), InputError);
}

class CsvFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("zoomtune_csv_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(CsvFileTest, EmitCsvWritesAndReadsBack) {
  const std::filesystem::path p = dir_ / "curves.csv";
  emit_csv(two_methods(), p);
  const AggregateResult b = read_curves_csv(p);
  EXPECT_EQ(b.method("theory").mean, two_methods().methods[1].mean);
  emit_csv(two_methods(), dir_ / "again.csv");
  EXPECT_EQ(slurp(p), slurp(dir_ / "again.csv"));
}

TEST_F(CsvFileTest, SweepCsvEndsWithArgmin) {
  SweepResult s;
  s.curves = two_methods();
  s.argmin = 0.5;
  const std::filesystem::path p = dir_ / "sweep.csv";
  emit_sweep_csv(s, p);
  const std::string text = slurp(p);
  const std::string tail = "# argmin,0.5\n";
  ASSERT_GE(text.size(), tail.size());
  EXPECT_EQ(text.substr(text.size() - tail.size()), tail);
  EXPECT_EQ(read_curves_csv(p).methods.size(), 2u);
}

TEST_F(CsvFileTest, GroupCsv) {
  const std::vector<GroupRow> rows{{0, 0.1, 0.25}, {0, 0.5, -0.25}, {1, 0.1, 0.0}};
  const std::filesystem::path p = dir_ / "groups.csv";
  emit_group_csv(rows, p);
  EXPECT_EQ(slurp(p), "group,value,centered_mean_reward\n0,0.1,0.25\n0,0.5,-0.25\n1,0.1,0\n");
}

TEST_F(CsvFileTest, WriteFailureNamesThePath) {
  const std::filesystem::path p = dir_ / "missing" / "out.csv";
  try {
    emit_csv(two_methods(), p);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(p.string()), std::string::npos);
  }
  EXPECT_THROW(read_curves_csv(p), InputError);
}

}  // namespace
}  // namespace zoomtune
