// Copyright 2026 The dpbins Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment subcommands run end to end through the dpbins executable named
// by $DPBINS_CLI. These check the qualitative trends each sweep exists to
// show, at reduced scale.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace dpbins {
namespace {

namespace fs = std::filesystem;

using Table = std::vector<std::map<std::string, std::string>>;

class CliExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* cli = std::getenv("DPBINS_CLI");
    if (cli == nullptr) GTEST_SKIP() << "DPBINS_CLI not set";
    cli_ = cli;
    dir_ = fs::temp_directory_path() /
           ("dpbins_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {
    if (!dir_.empty()) fs::remove_all(dir_);
  }

  int Run(const std::string& args) const {
    const std::string command = "cd '" + dir_.string() + "' && '" + cli_ +
                                "' " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  Table ReadCsv(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::string line;
    std::vector<std::string> header;
    Table rows;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (!line.empty() && line.back() == ',') cells.emplace_back();
      if (header.empty()) {
        header = cells;
        continue;
      }
      std::map<std::string, std::string> row;
      for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = cells.at(i);
      rows.push_back(std::move(row));
    }
    return rows;
  }

  std::string cli_;
  fs::path dir_;
};

double Num(const std::map<std::string, std::string>& row, const std::string& key) {
  return std::stod(row.at(key));
}

TEST_F(CliExperimentTest, TradeoffMeanMmdFallsWithBudget) {
  ASSERT_EQ(Run("tradeoff --dim 2 --n 10000 --epsilons 0.1 1 10 "
                "--repetitions 5 --width 10 --s1 40 --s2 10 --out t.csv"),
            0);
  const Table rows = ReadCsv("t.csv");
  ASSERT_EQ(rows.size(), 6u);
  for (const std::string method : {"grid", "tree"}) {
    std::vector<std::pair<double, double>> curve;
    for (const auto& row : rows) {
      if (row.at("method") == method) {
        curve.emplace_back(Num(row, "mean_mmd"), Num(row, "std_mmd"));
      }
    }
    ASSERT_EQ(curve.size(), 3u);
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
      EXPECT_LE(curve[i + 1].first,
                curve[i].first + 2 * std::max(curve[i].second, curve[i + 1].second))
          << method << " at step " << i;
    }
  }
}

TEST_F(CliExperimentTest, TreeBeatsGridInFiveDimensions) {
  ASSERT_EQ(Run("tradeoff --dim 5 --n 10000 --epsilons 1 --repetitions 5 "
                "--width 15 --s1 120 --s2 15 --out t.csv --seed 2"),
            0);
  const Table rows = ReadCsv("t.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].at("method"), "grid");
  EXPECT_LT(Num(rows[1], "mean_mmd"), Num(rows[0], "mean_mmd"));
}

TEST_F(CliExperimentTest, ScalingPlateausAndBoundDominates) {
  ASSERT_EQ(Run("scaling --dim 1 --ns 100000 --epsilons 0.1 10 100 "
                "--repetitions 4 --width 0.25 --eval-points 200 --out s.csv"),
            0);
  const Table rows = ReadCsv("s.csv");
  ASSERT_EQ(rows.size(), 12u);
  std::map<double, double> mean_mmd;
  int covered = 0, with_bound = 0;
  for (const auto& row : rows) {
    mean_mmd[Num(row, "epsilon")] += Num(row, "empirical_mmd") / 4;
    if (row.at("preconditions_met") == "true") {
      ++with_bound;
      if (Num(row, "empirical_kd_sup") <= Num(row, "theory_bound")) ++covered;
    }
  }
  EXPECT_LT(std::abs(mean_mmd[10] - mean_mmd[100]), mean_mmd[0.1] - mean_mmd[10]);
  ASSERT_EQ(with_bound, 12);
  EXPECT_GE(covered, 0.95 * with_bound);
}

TEST_F(CliExperimentTest, UniformMixtureMinimaAgree) {
  std::string cs;
  for (int i = 1; i <= 40; ++i) cs += " " + std::to_string(0.05 * i);
  ASSERT_EQ(Run("uniform-mixture --k 5 --sample-n 100000 --cs" + cs +
                " --out u.csv"),
            0);
  const Table rows = ReadCsv("u.csv");
  ASSERT_EQ(rows.size(), 40u);
  auto argmin = [&](const std::string& column) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (Num(rows[i], column) < Num(rows[best], column)) best = i;
    }
    return best;
  };
  const std::size_t kl_min = argmin("kl");
  const std::size_t mmd_min = argmin("sample_mmd");
  const double c_min = Num(rows[mmd_min], "c");
  // Row i holds c = 0.05 (i + 1), so 2 c_min sits at row 2 i + 1.
  ASSERT_LT(2 * mmd_min + 1, rows.size());
  EXPECT_LT(Num(rows[mmd_min], "sample_mmd"),
            Num(rows[2 * mmd_min + 1], "sample_mmd"));
  const double ratio = Num(rows[kl_min], "c") / c_min;
  EXPECT_GE(ratio, 0.2);
  EXPECT_LE(ratio, 5.0);
  const double closed_ratio = Num(rows[argmin("closed_form_mmd")], "c") / c_min;
  EXPECT_GE(closed_ratio, 0.5);
  EXPECT_LE(closed_ratio, 2.0);
}

TEST_F(CliExperimentTest, EmptyReleasesAreCountedNotAveraged) {
  ASSERT_EQ(Run("tradeoff --dim 2 --n 300 --epsilons 0.001 --methods grid "
                "--repetitions 3 --width 100 --out t.csv"),
            0);
  const Table rows = ReadCsv("t.csv");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].at("empty_releases"), "3");
  EXPECT_EQ(rows[0].at("mean_mmd"), "nan");
}

}  // namespace
}  // namespace dpbins
