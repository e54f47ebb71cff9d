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

#include "zoomtune/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "zoomtune/errors.hpp"
#include "zoomtune/tuners.hpp"

namespace zoomtune {
namespace {

ExperimentConfig parse(const std::string& text, std::vector<std::string> overrides = {}) {
  std::istringstream in(text);
  return parse_config(in, overrides);
}

TEST(ConfigTest, DefaultsWhenEmpty) {
  const ExperimentConfig c = parse("");
  EXPECT_EQ(c.kind, ExperimentKind::kGlbBench);
  EXPECT_EQ(c.horizon, 3000);
  EXPECT_EQ(c.repetitions, 10);
  EXPECT_EQ(c.environment.dim, 5);
  EXPECT_EQ(c.environment.arms, 20u);
  EXPECT_DOUBLE_EQ(c.lipschitz.tau0, 0.1);
  EXPECT_TRUE(c.tuner.candidates.empty());
}

TEST(ConfigTest, ParsesSectionsAndLists) {
  const ExperimentConfig c = parse(
      "[experiment]\n"
      "kind = lipschitz_bench\n"
      "horizon = 9000\n"
      "seed = 42\n"
      "wall_time = false\n"
      "[environment]\n"
      "family = triangle\n"
      "changes = 3\n"
      "peaks = 0.1, 0.9\n"
      "[lipschitz]\n"
      "methods = zooming, oracle\n"
      "epoch_len = auto\n");
  EXPECT_EQ(c.kind, ExperimentKind::kLipschitzBench);
  EXPECT_EQ(c.horizon, 9000);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_FALSE(c.wall_time);
  EXPECT_EQ(c.environment.peaks, (std::vector<double>{0.1, 0.9}));
  EXPECT_EQ(c.lipschitz.methods, (std::vector<std::string>{"zooming", "oracle"}));
  EXPECT_EQ(c.lipschitz.epoch_len, -1);
}

TEST(ConfigTest, OverridesWinOverFile) {
  const ExperimentConfig c =
      parse("[experiment]\nhorizon = 100\n", {"experiment.horizon=200", "environment.dim=7"});
  EXPECT_EQ(c.horizon, 200);
  EXPECT_EQ(c.environment.dim, 7);
}

TEST(ConfigTest, CandidateShorthands) {
  EXPECT_EQ(config_from_overrides(std::vector<std::string>{"tuner.candidates=c1"}).tuner.candidates,
            candidate_set_c1());
  EXPECT_EQ(config_from_overrides(std::vector<std::string>{"tuner.candidates=C2"}).tuner.candidates,
            candidate_set_c2());
  EXPECT_EQ(
      config_from_overrides(std::vector<std::string>{"tuner.candidates=0.5,2"}).tuner.candidates,
      (std::vector<double>{0.5, 2.0}));
}

TEST(ConfigTest, AutoScheduleKeys) {
  const ExperimentConfig c = parse("[tuner]\nt1 = auto\nt2 = 40\n");
  EXPECT_EQ(c.tuner.t1, -1);
  EXPECT_EQ(c.tuner.t2, 40);
}

TEST(ConfigTest, RejectsUnknownSectionAndKey) {
  EXPECT_THROW(parse("[bogus]\nx = 1\n"), InputError);
  EXPECT_THROW(parse("[experiment]\nhorizn = 10\n"), InputError);
  EXPECT_THROW(parse("", {"experiment.bogus=1"}), InputError);
}

TEST(ConfigTest, RejectsBadNumbers) {
  EXPECT_THROW(parse("[experiment]\nhorizon = ten\n"), InputError);
  EXPECT_THROW(parse("[experiment]\nhorizon = 10.5\n"), InputError);
  EXPECT_THROW(parse("[algorithm]\nlambda = nan\n"), InputError);
  EXPECT_THROW(parse("[experiment]\nwall_time = maybe\n"), InputError);
  EXPECT_THROW(parse("[environment]\nlink = cubic\n"), InputError);
  EXPECT_THROW(parse("[experiment]\nkind = sweep\n"), InputError);
}

TEST(ConfigTest, RejectsMalformedOverrides) {
  for (const std::string o : {"horizon=5", "experiment.horizon", ".horizon=5", "experiment.=5",
                              "a.b.c=1"}) {
    EXPECT_THROW(parse("", {o}), InputError) << o;
  }
}

TEST(ConfigTest, ValidationErrors) {
  auto bad = [](std::vector<std::string> o) {
    EXPECT_THROW(config_from_overrides(o), InputError) << o.back();
  };
  bad({"experiment.repetitions=0"});
  bad({"experiment.horizon=-1"});
  bad({"environment.noise_sigma=-0.1"});
  bad({"algorithm.name=ucb"});
  bad({"algorithm.lambda=0"});
  bad({"algorithm.delta=1"});
  bad({"tuner.methods=cdt,magic"});
  bad({"tuner.grid_resolution=0.2"});
  bad({"environment.type=csv"});
  bad({"experiment.kind=lipschitz_bench", "lipschitz.methods=zooming,ucb"});
  bad({"experiment.kind=lipschitz_bench", "experiment.horizon=10", "environment.changes=10"});
  bad({"experiment.kind=lipschitz_bench", "environment.change_rounds=50,20"});
  bad({"experiment.kind=lipschitz_bench", "environment.peaks=0.5,1.5"});
  bad({"experiment.kind=grid_sweep", "sweep.group_window=0"});
}

TEST(ConfigTest, ValidationMessagesNameTheKey) {
  try {
    config_from_overrides(std::vector<std::string>{"algorithm.lambda=-2"});
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("algorithm.lambda"), std::string::npos);
  }
}

TEST(ConfigTest, ToIniRoundTrips) {
  const ExperimentConfig a = config_from_overrides(std::vector<std::string>{
      "experiment.kind=grid_sweep", "experiment.seed=99", "algorithm.name=lints",
      "algorithm.lambda=0.3", "sweep.values=0.1,0.25,3", "tuner.candidates=c2"});
  const std::string text = to_ini(a);
  const ExperimentConfig b = parse(text);
  EXPECT_EQ(to_ini(b), text);
  EXPECT_EQ(b.kind, ExperimentKind::kGridSweep);
  EXPECT_EQ(b.seed, 99u);
  EXPECT_DOUBLE_EQ(b.algorithm.lambda, 0.3);
  EXPECT_EQ(b.sweep.values, (std::vector<double>{0.1, 0.25, 3.0}));
  EXPECT_EQ(b.tuner.candidates, candidate_set_c2());
}

TEST(ConfigTest, LoadConfigPrefixesPath) {
  const std::filesystem::path p =
      std::filesystem::temp_directory_path() / "zoomtune_config_test.ini";
  {
    std::ofstream out(p);
    out << "[experiment]\nhorizon = x\n";
  }
  try {
    load_config(p);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(p.string()), std::string::npos);
  }
  std::filesystem::remove(p);
  EXPECT_THROW(load_config(p), InputError);
}

TEST(ConfigTest, LipschitzEpochLength) {
  EXPECT_EQ(lipschitz_epoch_len(90000, 3), 22800);
  EXPECT_EQ(lipschitz_epoch_len(500, 0), 500);
  EXPECT_EQ(lipschitz_epoch_len(10, 3), 10);
}

TEST(ConfigTest, DefaultSweepValues) {
  const std::vector<double> v = default_sweep_values();
  ASSERT_EQ(v.size(), 21u);
  EXPECT_DOUBLE_EQ(v.front(), 0.1);
  EXPECT_DOUBLE_EQ(v[1], 0.5);
  EXPECT_DOUBLE_EQ(v.back(), 10.0);
}

TEST(ConfigTest, GlbOptionsFallsBackToEnvironmentNoise) {
  ExperimentConfig c;
  c.environment.noise_sigma = 0.4;
  EXPECT_DOUBLE_EQ(glb_options(c).sigma, 0.4);
  c.algorithm.sigma = 0.0;
  EXPECT_DOUBLE_EQ(glb_options(c).sigma, 0.0);
}

}  // namespace
}  // namespace zoomtune
