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

#include "zoomtune/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "zoomtune/csv_output.hpp"
#include "zoomtune/errors.hpp"
#include "zoomtune/glb.hpp"
#include "zoomtune/tuners.hpp"
#include "zoomtune/zooming.hpp"

namespace zoomtune {
namespace {

constexpr std::uint64_t kEnvStream = 0;
constexpr std::uint64_t kAlgorithmStream = 1;
constexpr std::uint64_t kScheduleStream = 0x5c4ed01eULL;

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool parse_fixed(const std::string& method, double& value) {
  constexpr std::string_view kPrefix = "fixed=";
  if (method.rfind(kPrefix, 0) != 0) return false;
  value = std::stod(method.substr(kPrefix.size()));
  return true;
}

std::string fixed_name(double v) { return "fixed=" + format_double(v); }

std::unique_ptr<GlbEnvironment> make_glb_env(const ExperimentConfig& c, SeededRng& setup) {
  const EnvironmentConfig& e = c.environment;
  if (e.type == "csv") {
    auto users = std::make_shared<const Matrix>(load_csv_matrix(e.users_path, e.dim));
    auto items = std::make_shared<const Matrix>(load_csv_matrix(e.items_path, e.dim));
    return std::make_unique<CsvDatasetEnv>(users, items, e.arms, e.theta_users, e.link,
                                           e.noise_sigma, setup);
  }
  return std::make_unique<SyntheticGlbEnv>(e.dim, e.arms, e.link, e.noise_sigma, setup);
}

RunResult run_glb(const ExperimentConfig& c, const std::string& method, std::uint64_t seed) {
  RunResult result;
  result.method = method;
  result.seed = seed;
  if (c.horizon == 0) return result;
  const auto start = std::chrono::steady_clock::now();

  const RunSeeds seeds = run_seeds(seed);
  SeededRng setup_rng(seeds.setup);
  SeededRng arm_rng(seeds.arms);
  SeededRng noise_rng(seeds.noise);
  SeededRng algo_rng(seeds.algorithm);

  const std::unique_ptr<GlbEnvironment> env = make_glb_env(c, setup_rng);
  const std::unique_ptr<GlbAlgorithm> algo = make_algorithm(c.algorithm.name, glb_options(c));

  TunerOptions topt;
  topt.horizon = c.horizon;
  topt.candidates = c.tuner.candidates;
  topt.t1 = c.tuner.t1;
  topt.t2 = c.tuner.t2;
  topt.tau0 = c.tuner.tau0;
  topt.grid_resolution = c.tuner.grid_resolution;
  std::string tuner_name = method;
  if (parse_fixed(method, topt.fixed_value)) tuner_name = "fixed";
  const std::unique_ptr<Tuner> tuner = make_tuner(tuner_name, algo->hyperparams(), topt);

  result.cum_regret.reserve(static_cast<std::size_t>(c.horizon));
  result.mean_reward.reserve(static_cast<std::size_t>(c.horizon));
  double regret = 0.0;
  for (std::int64_t t = 1; t <= c.horizon; ++t) {
    const std::vector<Vector> arms = env->gen_arms(t, arm_rng);
    const Proposal proposal = tuner->propose(t, algo_rng);
    const std::vector<double> hp =
        proposal.warm_up ? algo->theoretical_values(t) : proposal.values;
    std::size_t chosen = 0;
    if (proposal.warm_up || algo->needs_warmup()) {
      chosen = algo_rng.uniform_index(arms.size());
    } else {
      chosen = algo->select(arms, hp, algo_rng);
    }
    const double y = env->draw_reward(arms[chosen], noise_rng);
    algo->update(arms[chosen], y, hp);
    tuner->feedback(y);

    const double mean = env->mean_reward(arms[chosen]);
    regret += env->optimal_mean(arms) - mean;
    result.cum_regret.push_back(regret);
    result.mean_reward.push_back(mean);
  }
  result.wall_seconds = c.wall_time ? elapsed_since(start) : 0.0;
  return result;
}

RunResult run_lipschitz(const ExperimentConfig& c, const SwitchingLipschitzEnv& env,
                        const std::string& method, std::uint64_t seed) {
  RunResult result;
  result.method = method;
  result.seed = seed;
  if (c.horizon == 0) return result;
  const auto start = std::chrono::steady_clock::now();

  const RunSeeds seeds = run_seeds(seed);
  SeededRng noise_rng(seeds.noise);
  SeededRng algo_rng(seeds.algorithm);

  ZoomingConfig z;
  z.tau0 = c.lipschitz.tau0;
  z.horizon = c.horizon;
  z.dim = 1;
  z.grid_resolution = c.lipschitz.grid_resolution;
  z.epoch_len = c.lipschitz.epoch_len > 0
                    ? std::min(c.lipschitz.epoch_len, c.horizon)
                    : lipschitz_epoch_len(c.horizon,
                                          static_cast<std::int64_t>(env.change_rounds().size()));

  std::optional<ZoomingBandit> zooming;
  std::optional<DoubleRestartZooming> double_restart;
  if (method == "zooming") {
    z.mode = ZoomingMode::kPlain;
    zooming.emplace(z);
  } else if (method == "zooming_ts_r") {
    z.mode = ZoomingMode::kTsRestart;
    zooming.emplace(z);
  } else if (method == "oracle") {
    z.mode = ZoomingMode::kOracleRestart;
    z.change_points = env.change_rounds();
    zooming.emplace(z);
  } else if (method == "zooming_ts_dr") {
    z.mode = ZoomingMode::kTsRestart;
    double_restart.emplace(c.horizon, c.lipschitz.p_u, z);
  } else {
    throw InputError("unknown lipschitz method '" + method + "'");
  }

  result.cum_regret.reserve(static_cast<std::size_t>(c.horizon));
  result.mean_reward.reserve(static_cast<std::size_t>(c.horizon));
  double regret = 0.0;
  for (std::int64_t t = 1; t <= c.horizon; ++t) {
    const Point x = zooming ? zooming->select_arm(algo_rng) : double_restart->select_arm(algo_rng);
    const double y = env.draw_reward(x[0], t, noise_rng);
    if (zooming) {
      zooming->update(x, y);
    } else {
      double_restart->update(x, y);
    }
    const double mean = env.eval(x[0], t);
    regret += env.optimal_mean(t) - mean;
    result.cum_regret.push_back(regret);
    result.mean_reward.push_back(mean);
  }
  result.wall_seconds = c.wall_time ? elapsed_since(start) : 0.0;
  return result;
}

std::vector<std::string> methods_of(const ExperimentConfig& c) {
  return c.kind == ExperimentKind::kLipschitzBench ? c.lipschitz.methods : c.tuner.methods;
}

}  // namespace

const MethodAggregate& AggregateResult::method(const std::string& name) const {
  for (const MethodAggregate& m : methods) {
    if (m.method == name) return m;
  }
  throw InputError("no results for method '" + name + "'");
}

RunSeeds run_seeds(std::uint64_t run_seed) {
  const std::uint64_t env = derive_seed(run_seed, kEnvStream);
  return {derive_seed(env, 0), derive_seed(env, 1), derive_seed(env, 2),
          derive_seed(run_seed, kAlgorithmStream)};
}

std::uint64_t schedule_seed(std::uint64_t base_seed) {
  return derive_seed(base_seed, kScheduleStream);
}

SwitchingLipschitzEnv make_lipschitz_env(const ExperimentConfig& c) {
  const EnvironmentConfig& e = c.environment;
  const std::int64_t horizon = std::max<std::int64_t>(c.horizon, 2);
  if (!e.change_rounds.empty()) {
    // Explicit schedule: peaks cycle through the configured list.
    std::vector<double> peaks;
    for (std::size_t i = 0; i <= e.change_rounds.size(); ++i) {
      peaks.push_back(e.peaks[i % e.peaks.size()]);
    }
    return SwitchingLipschitzEnv(e.family, e.change_rounds, peaks, e.noise_sigma, horizon);
  }
  SeededRng rng(schedule_seed(c.seed));
  return SwitchingLipschitzEnv::random(e.family, horizon, e.changes, e.peaks, e.noise_sigma, rng);
}

RunResult run_single(const ExperimentConfig& config, const std::string& method,
                     std::uint64_t run_seed) {
  if (config.kind == ExperimentKind::kLipschitzBench) {
    return run_lipschitz(config, make_lipschitz_env(config), method, run_seed);
  }
  return run_glb(config, method, run_seed);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& job) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<RunResult> run_method(const ExperimentConfig& config, const std::string& method) {
  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  std::vector<RunResult> runs(reps);
  if (config.kind == ExperimentKind::kLipschitzBench) {
    const SwitchingLipschitzEnv env = make_lipschitz_env(config);
    parallel_for(reps, config.threads, [&](std::size_t r) {
      runs[r] = run_lipschitz(config, env, method, config.seed + r);
    });
  } else {
    parallel_for(reps, config.threads, [&](std::size_t r) {
      runs[r] = run_glb(config, method, config.seed + r);
    });
  }
  return runs;
}

MethodAggregate aggregate(const std::string& method, std::span<const RunResult> runs) {
  require(!runs.empty(), "aggregate: no runs");
  MethodAggregate agg;
  agg.method = method;
  const std::size_t rounds = runs.front().cum_regret.size();
  for (const RunResult& r : runs) {
    require(r.cum_regret.size() == rounds, "aggregate: runs of different length");
  }
  const double n = static_cast<double>(runs.size());
  agg.mean.assign(rounds, 0.0);
  agg.std.assign(rounds, 0.0);
  for (std::size_t t = 0; t < rounds; ++t) {
    double sum = 0.0;
    for (const RunResult& r : runs) sum += r.cum_regret[t];
    const double mean = sum / n;
    double ss = 0.0;
    for (const RunResult& r : runs) ss += (r.cum_regret[t] - mean) * (r.cum_regret[t] - mean);
    agg.mean[t] = mean;
    agg.std[t] = runs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  if (rounds > 0) {
    agg.final_mean = agg.mean.back();
    agg.final_std = agg.std.back();
  }
  double wall = 0.0;
  for (const RunResult& r : runs) wall += r.wall_seconds;
  agg.wall_seconds = wall / n;
  return agg;
}

AggregateResult run_repetitions(const ExperimentConfig& config) {
  validate(config);
  AggregateResult result;
  for (const std::string& m : methods_of(config)) {
    const std::vector<RunResult> runs = run_method(config, m);
    result.methods.push_back(aggregate(m, runs));
  }
  return result;
}

AggregateResult run_lipschitz_bench(const ExperimentConfig& config) {
  require(config.kind == ExperimentKind::kLipschitzBench,
          "run_lipschitz_bench: config kind is not lipschitz_bench");
  return run_repetitions(config);
}

AggregateResult run_glb_bench(const ExperimentConfig& config) {
  require(config.kind == ExperimentKind::kGlbBench, "run_glb_bench: config kind is not glb_bench");
  return run_repetitions(config);
}

double sweep_argmin(std::span<const double> values, std::span<const double> means) {
  require(!values.empty() && values.size() == means.size(), "sweep_argmin: bad input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (means[i] < means[best] || (means[i] == means[best] && values[i] < values[best])) {
      best = i;
    }
  }
  return values[best];
}

std::vector<GroupRow> group_mean_rewards(std::span<const double> values,
                                         const std::vector<std::vector<RunResult>>& runs,
                                         std::int64_t window) {
  require(window >= 1, "group_mean_rewards: window must be >= 1");
  require(values.size() == runs.size(), "group_mean_rewards: values and runs differ in size");
  if (values.empty() || runs.front().empty()) return {};
  const std::size_t rounds = runs.front().front().mean_reward.size();
  const std::size_t w = static_cast<std::size_t>(window);
  const std::size_t groups = (rounds + w - 1) / w;

  // per_value[v][g]: mean over seeds and rounds in window g.
  std::vector<std::vector<double>> per_value(values.size(), std::vector<double>(groups, 0.0));
  for (std::size_t v = 0; v < values.size(); ++v) {
    for (std::size_t g = 0; g < groups; ++g) {
      const std::size_t lo = g * w;
      const std::size_t hi = std::min(rounds, lo + w);
      double sum = 0.0;
      for (const RunResult& r : runs[v]) {
        require(r.mean_reward.size() == rounds, "group_mean_rewards: runs of different length");
        for (std::size_t t = lo; t < hi; ++t) sum += r.mean_reward[t];
      }
      per_value[v][g] = sum / static_cast<double>((hi - lo) * runs[v].size());
    }
  }
  std::vector<GroupRow> rows;
  for (std::size_t g = 0; g < groups; ++g) {
    double center = 0.0;
    for (std::size_t v = 0; v < values.size(); ++v) center += per_value[v][g];
    center /= static_cast<double>(values.size());
    for (std::size_t v = 0; v < values.size(); ++v) {
      rows.push_back({static_cast<std::int64_t>(g), values[v], per_value[v][g] - center});
    }
  }
  return rows;
}

SweepResult grid_sweep(const ExperimentConfig& config) {
  require(config.kind == ExperimentKind::kGridSweep, "grid_sweep: config kind is not grid_sweep");
  validate(config);
  SweepResult result;
  result.values = config.sweep.values.empty() ? default_sweep_values() : config.sweep.values;
  std::vector<std::vector<RunResult>> all_runs;
  for (double v : result.values) {
    const std::string name = fixed_name(v);
    std::vector<RunResult> runs = run_method(config, name);
    MethodAggregate agg = aggregate(name, runs);
    result.final_mean.push_back(agg.final_mean);
    result.final_std.push_back(agg.final_std);
    result.curves.methods.push_back(std::move(agg));
    all_runs.push_back(std::move(runs));
  }
  result.argmin = sweep_argmin(result.values, result.final_mean);
  if (!config.sweep.group_output.empty()) {
    result.groups = group_mean_rewards(result.values, all_runs, config.sweep.group_window);
  }
  return result;
}

}  // namespace zoomtune
