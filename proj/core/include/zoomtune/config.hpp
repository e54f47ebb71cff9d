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

// Experiment configuration.
//
// Configs are INI files. Every key is optional; unknown sections or keys are
// rejected. Overrides use the form "section.key=value" and are applied after
// the file is read. See tools/configs/ for annotated examples.

#ifndef ZOOMTUNE_CONFIG_HPP_
#define ZOOMTUNE_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zoomtune/environments.hpp"
#include "zoomtune/glb.hpp"

namespace zoomtune {

enum class ExperimentKind { kLipschitzBench, kGlbBench, kGridSweep };

ExperimentKind parse_kind(std::string_view name);
std::string_view to_string(ExperimentKind kind);

struct EnvironmentConfig {
  // Contextual benches.
  std::string type = "synthetic";  // synthetic | csv
  int dim = 5;
  std::size_t arms = 20;
  Link link = Link::kIdentity;
  double noise_sigma = 0.25;
  std::string users_path;
  std::string items_path;
  std::size_t theta_users = 300;
  // Lipschitz bench.
  LipschitzFamily family = LipschitzFamily::kTriangle;
  std::int64_t changes = 3;
  std::vector<double> peaks = default_peak_locations();
  std::vector<std::int64_t> change_rounds;  // explicit list; empty = random
};

struct AlgorithmConfig {
  std::string name = "linucb";
  double lambda = 1.0;
  double sigma = -1.0;  // < 0: use environment.noise_sigma
  double delta = 0.0;   // 0: 1/T
  double S = 1.0;
  double interval_low = 0.1;
  double interval_high = 5.0;
  double warmup_min_eigen = 0.1;
  double glm_ridge = 0.0;
  double mle_tol = 1e-6;
};

struct TunerConfig {
  std::vector<std::string> methods{"cdt", "theory", "syndicated", "op"};
  std::vector<double> candidates;  // empty = C1
  std::int64_t t1 = -1;            // < 0: schedule default
  std::int64_t t2 = -1;
  double tau0 = 0.5;
  double grid_resolution = 0.0;
};

struct LipschitzConfig {
  std::vector<std::string> methods{"zooming", "zooming_ts_r", "oracle"};
  std::int64_t epoch_len = -1;  // < 0: 10 * ceil((T/c)^(3/4))
  double tau0 = 0.1;
  double grid_resolution = 0.0;
  double p_u = 1.0;  // double-restart exponent
};

struct SweepConfig {
  std::vector<double> values;  // empty = 0.1 then 0.5, 1.0, ..., 10
  std::int64_t group_window = 20;
  std::string group_output;    // empty = no group export
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kGlbBench;
  std::int64_t horizon = 3000;
  std::int64_t repetitions = 10;
  std::uint64_t seed = 1;
  std::string output = "results.csv";
  bool wall_time = true;  // false writes 0 so output files are reproducible
  int threads = 0;        // 0 = hardware concurrency

  EnvironmentConfig environment;
  AlgorithmConfig algorithm;
  TunerConfig tuner;
  LipschitzConfig lipschitz;
  SweepConfig sweep;
};

/// Default exploration grid for sweeps: 0.1, 0.5, 1.0, ..., 10.0.
std::vector<double> default_sweep_values();

/// Parses INI text and applies overrides. Throws InputError.
ExperimentConfig parse_config(std::istream& in, std::span<const std::string> overrides = {});
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::span<const std::string> overrides = {});
/// Config built from defaults plus overrides only.
ExperimentConfig config_from_overrides(std::span<const std::string> overrides);

/// Cross-field checks. Throws InputError.
void validate(const ExperimentConfig& config);

/// Fully resolved config as INI text.
std::string to_ini(const ExperimentConfig& config);

/// Options for the bandit algorithm implied by the config.
GlbOptions glb_options(const ExperimentConfig& config);

/// 10 * ceil((T / c)^(3/4)) with c clamped below at 1.
std::int64_t lipschitz_epoch_len(std::int64_t horizon, std::int64_t changes);

}  // namespace zoomtune

#endif  // ZOOMTUNE_CONFIG_HPP_
