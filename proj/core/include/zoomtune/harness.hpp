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

// Experiment driver.
//
// Repetition r of an experiment uses run seed `config.seed + r`. From a run
// seed the harness derives an environment seed and an algorithm seed; the
// environment seed is split again into setup, arm and noise streams. Methods
// compared on the same run seed therefore see identical arms and noise.

#ifndef ZOOMTUNE_HARNESS_HPP_
#define ZOOMTUNE_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zoomtune/config.hpp"
#include "zoomtune/environments.hpp"
#include "zoomtune/rng.hpp"

namespace zoomtune {

struct RunResult {
  std::string method;
  std::uint64_t seed = 0;
  std::vector<double> cum_regret;   // after rounds 1..T
  std::vector<double> mean_reward;  // expected reward of the pulled arm per round
  double wall_seconds = 0.0;
};

struct MethodAggregate {
  std::string method;
  std::vector<double> mean;  // per round
  std::vector<double> std;   // per round, sample standard deviation (0 for R = 1)
  double final_mean = 0.0;
  double final_std = 0.0;
  double wall_seconds = 0.0;  // mean over runs
};

struct AggregateResult {
  std::vector<MethodAggregate> methods;

  const MethodAggregate& method(const std::string& name) const;
};

/// Per-run seed streams.
struct RunSeeds {
  std::uint64_t setup;
  std::uint64_t arms;
  std::uint64_t noise;
  std::uint64_t algorithm;
};
RunSeeds run_seeds(std::uint64_t run_seed);

/// Seed from which the Lipschitz change schedule is drawn (once per experiment).
std::uint64_t schedule_seed(std::uint64_t base_seed);

/// The switching testbed of a Lipschitz experiment.
SwitchingLipschitzEnv make_lipschitz_env(const ExperimentConfig& config);

/// One run of `method` (a tuner name, a Lipschitz method name, or
/// "fixed=<value>") under the experiment kind of `config`.
RunResult run_single(const ExperimentConfig& config, const std::string& method,
                     std::uint64_t run_seed);

/// Runs all repetitions of one method, concurrently when threads allow.
std::vector<RunResult> run_method(const ExperimentConfig& config, const std::string& method);

/// Mean and sample standard deviation per round. Runs must have equal length.
MethodAggregate aggregate(const std::string& method, std::span<const RunResult> runs);

/// Every configured method of a lipschitz_bench or glb_bench.
AggregateResult run_repetitions(const ExperimentConfig& config);
AggregateResult run_lipschitz_bench(const ExperimentConfig& config);
AggregateResult run_glb_bench(const ExperimentConfig& config);

struct GroupRow {
  std::int64_t group = 0;  // 0-based window index
  double value = 0.0;
  double centered_mean_reward = 0.0;
};

struct SweepResult {
  std::vector<double> values;
  std::vector<double> final_mean;
  std::vector<double> final_std;
  double argmin = 0.0;
  AggregateResult curves;     // methods named fixed=<value>
  std::vector<GroupRow> groups;
};

/// Fixed first hyperparameter for each grid value on shared seeds. The
/// argmin breaks ties toward the smallest value. Group rows hold the per-window
/// mean reward (averaged over seeds) minus its average across values.
SweepResult grid_sweep(const ExperimentConfig& config);

/// Argmin of means with ties to the smallest value.
double sweep_argmin(std::span<const double> values, std::span<const double> means);

/// Centered per-window mean rewards; rewards[v][r] is run r of value v.
std::vector<GroupRow> group_mean_rewards(std::span<const double> values,
                                         const std::vector<std::vector<RunResult>>& runs,
                                         std::int64_t window);

/// Runs `job(i)` for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Rethrows the exception of the lowest failing index.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& job);

}  // namespace zoomtune

#endif  // ZOOMTUNE_HARNESS_HPP_
