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

#ifndef ZOOMTUNE_EXP3_HPP_
#define ZOOMTUNE_EXP3_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zoomtune/rng.hpp"

namespace zoomtune {

/// Exponential-weights adversarial bandit over a finite candidate list.
///
/// p_j = gamma/K + (1 - gamma) w_j / sum_k w_k. After playing j with
/// probability p_j and observing reward r, w_j *= exp(gamma/K * r/p_j);
/// all other weights stay put. Weights are rescaled by their maximum as soon
/// as one exceeds kRescaleAbove, which leaves the probabilities unchanged.
class Exp3 {
 public:
  static constexpr double kRescaleAbove = 1e100;

  Exp3(std::size_t num_arms, double gamma);

  std::size_t size() const { return weights_.size(); }
  double gamma() const { return gamma_; }
  const std::vector<double>& weights() const { return weights_; }

  std::vector<double> probabilities() const;

  /// Draws an index from probabilities() using one uniform.
  std::size_t sample(SeededRng& rng) const;

  /// Importance-weighted exponential update of the chosen arm only.
  void update(std::size_t chosen, double reward, double prob);

  /// Number of max-rescales performed so far.
  std::int64_t rescales() const { return rescales_; }

 private:
  std::vector<double> weights_;
  double gamma_;
  std::int64_t rescales_ = 0;
};

/// min{1, sqrt(K ln K / ((e - 1) rounds))}. Zero for a single arm.
double exp3_gamma(std::size_t num_arms, std::int64_t rounds);

/// Meta-layer state of the double-restart scheme: the ladder of candidate
/// epoch lengths and the EXP3 learner choosing among them once per top epoch.
struct Exp3Meta {
  std::int64_t horizon = 0;
  std::int64_t top_epoch_len = 0;     // H0
  std::vector<std::int64_t> ladder;   // ceil(H0 / 2^(i-1)), i = 1..N
  Exp3 exp3{1, 0.0};
};

/// H0 = ceil(T^((p_u+2)/(p_u+4))), N = ceil(log2 H0) + 1, uniform weights,
/// gamma = exp3_gamma(N, ceil(T/H0)).
Exp3Meta double_restarts_ladder(std::int64_t horizon, double p_u);

std::vector<double> exp3_probabilities(const Exp3Meta& meta);
void exp3_update(Exp3Meta& meta, std::size_t chosen, double epoch_reward_sum, double prob);

/// ceil() that ignores representation noise just above an integer.
std::int64_t ceil_int(double x);

}  // namespace zoomtune

#endif  // ZOOMTUNE_EXP3_HPP_
