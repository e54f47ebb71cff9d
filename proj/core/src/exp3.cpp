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

#include "zoomtune/exp3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "zoomtune/errors.hpp"

namespace zoomtune {

std::int64_t ceil_int(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9)); }

Exp3::Exp3(std::size_t num_arms, double gamma) : weights_(num_arms, 1.0), gamma_(gamma) {
  require(num_arms >= 1, "Exp3: need at least one arm");
  require(gamma >= 0.0 && gamma <= 1.0, "Exp3: gamma must lie in [0, 1]");
}

std::vector<double> Exp3::probabilities() const {
  const double k = static_cast<double>(weights_.size());
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  std::vector<double> probs(weights_.size());
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    probs[j] = gamma_ / k + (1.0 - gamma_) * weights_[j] / total;
  }
  return probs;
}

std::size_t Exp3::sample(SeededRng& rng) const {
  const std::vector<double> probs = probabilities();
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    acc += probs[j];
    if (u < acc) return j;
  }
  return probs.size() - 1;
}

void Exp3::update(std::size_t chosen, double reward, double prob) {
  require(chosen < weights_.size(), "Exp3::update: arm index out of range");
  require(prob > 0.0, "Exp3::update: probability must be positive");
  if (reward == 0.0) return;

  const double k = static_cast<double>(weights_.size());
  const double log_w = std::log(weights_[chosen]) + gamma_ / k * reward / prob;
  if (log_w > std::log(kRescaleAbove)) {
    // Divide every weight by the new maximum, computed in log space so the
    // exponent itself cannot overflow.
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      if (j == chosen) continue;
      weights_[j] = std::max(std::exp(std::log(weights_[j]) - log_w),
                             std::numeric_limits<double>::min());
    }
    weights_[chosen] = 1.0;
    ++rescales_;
    return;
  }
  weights_[chosen] = std::max(std::exp(log_w), std::numeric_limits<double>::min());
}

double exp3_gamma(std::size_t num_arms, std::int64_t rounds) {
  require(num_arms >= 1 && rounds >= 1, "exp3_gamma: need arms >= 1 and rounds >= 1");
  const double k = static_cast<double>(num_arms);
  const double g = std::sqrt(k * std::log(k) / ((std::numbers::e - 1.0) * static_cast<double>(rounds)));
  return std::min(1.0, g);
}

Exp3Meta double_restarts_ladder(std::int64_t horizon, double p_u) {
  require(horizon >= 2, "double_restarts_ladder: horizon must be >= 2");
  require(p_u >= 0.0, "double_restarts_ladder: p_u must be >= 0");
  Exp3Meta meta;
  meta.horizon = horizon;
  meta.top_epoch_len =
      ceil_int(std::pow(static_cast<double>(horizon), (p_u + 2.0) / (p_u + 4.0)));
  const double h0 = static_cast<double>(meta.top_epoch_len);
  const std::int64_t n = ceil_int(std::log2(h0)) + 1;
  for (std::int64_t i = 1; i <= n; ++i) {
    meta.ladder.push_back(ceil_int(h0 / std::ldexp(1.0, static_cast<int>(i - 1))));
  }
  const std::int64_t top_epochs = ceil_int(static_cast<double>(horizon) / h0);
  meta.exp3 = Exp3(meta.ladder.size(), exp3_gamma(meta.ladder.size(), top_epochs));
  return meta;
}

std::vector<double> exp3_probabilities(const Exp3Meta& meta) { return meta.exp3.probabilities(); }

void exp3_update(Exp3Meta& meta, std::size_t chosen, double epoch_reward_sum, double prob) {
  meta.exp3.update(chosen, epoch_reward_sum, prob);
}

}  // namespace zoomtune
