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

// Per-round costs of the hot paths.

#include <cmath>
#include <cstdint>
#include <vector>

#include "benchmark/benchmark.h"
#include "zoomtune/glb.hpp"
#include "zoomtune/linalg.hpp"
#include "zoomtune/rng.hpp"
#include "zoomtune/zooming.hpp"

namespace zoomtune {
namespace {

void BM_RidgeUpdate(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  SeededRng rng(1);
  std::vector<Vector> xs;
  for (int i = 0; i < 256; ++i) {
    Vector x(d);
    for (int j = 0; j < d; ++j) x[j] = rng.uniform(-1.0, 1.0);
    xs.push_back(x);
  }
  RidgeState ridge(d, 1.0);
  std::size_t i = 0;
  for (auto _ : state) {
    ridge.rank_one_update(xs[i++ % xs.size()], 0.5);
    benchmark::DoNotOptimize(ridge.V_inv().data());
  }
}
BENCHMARK(BM_RidgeUpdate)->Arg(5)->Arg(10)->Arg(25);

void BM_LinUcbSelect(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  GlbOptions opt;
  opt.dim = d;
  opt.lambda = 1.0;
  LinUcb algo(opt);
  SeededRng rng(2);
  std::vector<Vector> arms;
  for (std::size_t a = 0; a < k; ++a) {
    Vector x(d);
    for (int j = 0; j < d; ++j) x[j] = rng.uniform(-0.2, 0.2);
    arms.push_back(x);
  }
  const std::vector<double> hp{1.0};
  for (int t = 0; t < 50; ++t) algo.update(arms[static_cast<std::size_t>(t) % k], 0.3, hp);
  for (auto _ : state) benchmark::DoNotOptimize(algo.select(arms, 1.0));
}
BENCHMARK(BM_LinUcbSelect)->Args({5, 20})->Args({10, 60})->Args({25, 100});

void BM_ZoomingRound(benchmark::State& state) {
  ZoomingConfig config;
  config.tau0 = 0.1;
  config.horizon = 100000;
  config.epoch_len = 100000;
  ZoomingBandit bandit(config);
  SeededRng rng(3);
  for (auto _ : state) {
    const Point x = bandit.select_arm(rng);
    bandit.update(x, 1.0 - std::abs(x[0] - 0.3) + 0.1 * rng.normal());
  }
  state.counters["active"] = static_cast<double>(bandit.active_arms().size());
}
BENCHMARK(BM_ZoomingRound)->Iterations(20000);

}  // namespace
}  // namespace zoomtune

BENCHMARK_MAIN();
