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

// zoomtune: command line driver for the experiment harness.
//
//   zoomtune lipschitz-bench --config bench.ini --reps 20 --out curves.csv
//   zoomtune glb-bench --override environment.dim=10 --seed 7
//   zoomtune grid-sweep --config sweep.ini
//   zoomtune validate-config --config bench.ini

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zoomtune/config.hpp"
#include "zoomtune/csv_output.hpp"
#include "zoomtune/errors.hpp"
#include "zoomtune/glb.hpp"
#include "zoomtune/harness.hpp"

namespace {

using zoomtune::ExperimentConfig;
using zoomtune::ExperimentKind;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> reps;
  std::string out;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool run_flags) {
  cmd->add_option("--config", flags.config, "INI experiment config")->check(CLI::ExistingFile);
  cmd->add_option("--override", flags.overrides, "section.key=value, applied after the config")
      ->take_all();
  if (!run_flags) return;
  cmd->add_option("--seed", flags.seed, "base seed (experiment.seed)");
  cmd->add_option("--reps", flags.reps, "repetitions (experiment.repetitions)");
  cmd->add_option("--out", flags.out, "output CSV (experiment.output)");
}

ExperimentConfig resolve(const CommonFlags& flags, std::optional<ExperimentKind> kind) {
  std::vector<std::string> overrides = flags.overrides;
  if (kind) overrides.push_back("experiment.kind=" + std::string(zoomtune::to_string(*kind)));
  if (flags.seed) overrides.push_back("experiment.seed=" + std::to_string(*flags.seed));
  if (flags.reps) overrides.push_back("experiment.repetitions=" + std::to_string(*flags.reps));
  if (!flags.out.empty()) overrides.push_back("experiment.output=" + flags.out);
  return flags.config.empty() ? zoomtune::config_from_overrides(overrides)
                              : zoomtune::load_config(flags.config, overrides);
}

void print_summary(const zoomtune::AggregateResult& result) {
  std::printf("%-16s %14s %12s %10s\n", "method", "final_regret", "std", "seconds");
  for (const zoomtune::MethodAggregate& m : result.methods) {
    std::printf("%-16s %14.4f %12.4f %10.3f\n", m.method.c_str(), m.final_mean, m.final_std,
                m.wall_seconds);
  }
}

int run_bench(const CommonFlags& flags, ExperimentKind kind) {
  const ExperimentConfig config = resolve(flags, kind);
  const zoomtune::AggregateResult result = zoomtune::run_repetitions(config);
  zoomtune::emit_csv(result, config.output);
  print_summary(result);
  std::printf("wrote %s\n", config.output.c_str());
  return 0;
}

int run_sweep(const CommonFlags& flags) {
  const ExperimentConfig config = resolve(flags, ExperimentKind::kGridSweep);
  const zoomtune::SweepResult sweep = zoomtune::grid_sweep(config);
  zoomtune::emit_sweep_csv(sweep, config.output);
  print_summary(sweep.curves);
  const auto algo = zoomtune::make_algorithm(config.algorithm.name, zoomtune::glb_options(config));
  std::printf("argmin %s, theoretical value at T: %.4f\n",
              zoomtune::format_double(sweep.argmin).c_str(),
              algo->theoretical_values(config.horizon).front());
  std::printf("wrote %s\n", config.output.c_str());
  if (!config.sweep.group_output.empty()) {
    zoomtune::emit_group_csv(sweep.groups, config.sweep.group_output);
    std::printf("wrote %s\n", config.sweep.group_output.c_str());
  }
  return 0;
}

int run_validate(const CommonFlags& flags) {
  const ExperimentConfig config = resolve(flags, std::nullopt);
  std::cout << zoomtune::to_ini(config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online hyperparameter tuning experiments for contextual bandits"};
  app.require_subcommand(1);

  CommonFlags lip, glb, sweep, check;
  CLI::App* lip_cmd = app.add_subcommand("lipschitz-bench", "switching Lipschitz bandit bench");
  CLI::App* glb_cmd = app.add_subcommand("glb-bench", "tuners on a contextual bandit");
  CLI::App* sweep_cmd = app.add_subcommand("grid-sweep", "fixed-hyperparameter grid search");
  CLI::App* check_cmd = app.add_subcommand("validate-config", "print the resolved config");
  add_common(lip_cmd, lip, true);
  add_common(glb_cmd, glb, true);
  add_common(sweep_cmd, sweep, true);
  add_common(check_cmd, check, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (lip_cmd->parsed()) return run_bench(lip, ExperimentKind::kLipschitzBench);
    if (glb_cmd->parsed()) return run_bench(glb, ExperimentKind::kGlbBench);
    if (sweep_cmd->parsed()) return run_sweep(sweep);
    return run_validate(check);
  } catch (const zoomtune::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const zoomtune::ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
