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

// Online hyperparameter tuners sitting on top of a GlbAlgorithm.
//
// Each round the harness calls propose(t), runs the bandit algorithm with the
// proposed values, and hands the observed reward back through feedback(y).

#ifndef ZOOMTUNE_TUNERS_HPP_
#define ZOOMTUNE_TUNERS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zoomtune/exp3.hpp"
#include "zoomtune/glb.hpp"
#include "zoomtune/rng.hpp"
#include "zoomtune/zooming.hpp"

namespace zoomtune {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};
using Box = std::vector<Interval>;

/// Box made of the tuning intervals of `specs`.
Box box_of(std::span<const HyperparamSpec> specs);

/// a_i + u_i (b_i - a_i).
std::vector<double> affine_map(const Point& u, const Box& box);
/// Inverse of affine_map; 0.5 on degenerate axes. Throws InputError when a
/// value lies outside its interval.
Point affine_unmap(std::span<const double> native, const Box& box);

/// The C1 and C2 candidate lists used by the discrete tuners.
const std::vector<double>& candidate_set_c1();
const std::vector<double>& candidate_set_c2();

struct Proposal {
  std::vector<double> values;
  bool warm_up = false;  // the caller should pull a uniformly random arm
};

class Tuner {
 public:
  virtual ~Tuner() = default;
  virtual std::string_view name() const = 0;

  /// Must alternate strictly with feedback().
  Proposal propose(std::int64_t t, SeededRng& rng);
  void feedback(double y);

 protected:
  virtual Proposal do_propose(std::int64_t t, SeededRng& rng) = 0;
  virtual void do_feedback(double y) = 0;

 private:
  bool pending_ = false;
};

struct Schedule {
  std::int64_t t1 = 0;  // warm-up rounds
  std::int64_t t2 = 1;  // top-layer restart period
};

/// T1 = floor(T^(2/(p+3))), T2 = floor(3 T^((p+2)/(p+3))).
Schedule schedule_defaults(std::int64_t horizon, int p);

struct CdtConfig {
  Box box;
  std::int64_t horizon = 0;
  std::int64_t t1 = 0;
  std::int64_t t2 = 1;
  double tau0 = 0.5;
  double grid_resolution = 0.0;  // 0 = default for the box dimension
};

/// Continuous tuner: T1 uniformly random warm-up rounds, then Thompson
/// zooming with restarts every T2 rounds over the normalized box.
class CdtTuner final : public Tuner {
 public:
  explicit CdtTuner(CdtConfig config);

  std::string_view name() const override { return "cdt"; }
  const CdtConfig& config() const { return config_; }
  const ZoomingBandit& top_layer() const { return top_; }
  /// Rewards fed back outside [0, 1].
  std::int64_t out_of_range_rewards() const { return out_of_range_; }

 protected:
  Proposal do_propose(std::int64_t t, SeededRng& rng) override;
  void do_feedback(double y) override;

 private:
  CdtConfig config_;
  ZoomingBandit top_;
  std::optional<Point> pulled_;
  std::int64_t out_of_range_ = 0;
};

/// One EXP3 per hyperparameter over its own candidate list.
class SyndicatedTuner final : public Tuner {
 public:
  /// gamma < 0 selects exp3_gamma(|C_i|, horizon) per hyperparameter.
  SyndicatedTuner(std::vector<std::vector<double>> candidates, std::int64_t horizon,
                  double gamma = -1.0);

  std::string_view name() const override { return "syndicated"; }
  const std::vector<Exp3>& learners() const { return learners_; }
  const std::vector<std::vector<double>>& candidates() const { return candidates_; }

 protected:
  Proposal do_propose(std::int64_t t, SeededRng& rng) override;
  void do_feedback(double y) override;

 private:
  std::vector<std::vector<double>> candidates_;
  std::vector<Exp3> learners_;
  std::vector<std::size_t> chosen_;
  std::vector<double> chosen_prob_;
};

/// Gaussian Thompson sampling over the candidates of the first
/// hyperparameter; any further hyperparameters follow their theoretical
/// schedules.
class OpTuner final : public Tuner {
 public:
  OpTuner(std::vector<double> candidates, std::vector<HyperparamSpec> specs);

  std::string_view name() const override { return "op"; }
  std::span<const std::int64_t> counts() const { return counts_; }
  std::span<const double> means() const { return means_; }
  const std::vector<double>& candidates() const { return candidates_; }

  /// Test hook: overwrite the statistics of one candidate.
  void set_statistics(std::size_t index, std::int64_t count, double mean);

 protected:
  Proposal do_propose(std::int64_t t, SeededRng& rng) override;
  void do_feedback(double y) override;

 private:
  std::vector<double> candidates_;
  std::vector<HyperparamSpec> specs_;
  std::vector<std::int64_t> counts_;
  std::vector<double> means_;
  std::size_t chosen_ = 0;
};

/// Theoretical schedule of every hyperparameter.
class TheoryTuner final : public Tuner {
 public:
  explicit TheoryTuner(std::vector<HyperparamSpec> specs);
  std::string_view name() const override { return "theory"; }

 protected:
  Proposal do_propose(std::int64_t t, SeededRng& rng) override;
  void do_feedback(double) override {}

 private:
  std::vector<HyperparamSpec> specs_;
};

/// Fixed value for the first hyperparameter, theoretical values for the rest.
class FixedTuner final : public Tuner {
 public:
  FixedTuner(double value, std::vector<HyperparamSpec> specs);
  std::string_view name() const override { return "fixed"; }

 protected:
  Proposal do_propose(std::int64_t t, SeededRng& rng) override;
  void do_feedback(double) override {}

 private:
  double value_;
  std::vector<HyperparamSpec> specs_;
};

struct TunerOptions {
  std::int64_t horizon = 0;
  std::vector<double> candidates;   // empty = C1
  std::int64_t t1 = -1;             // < 0 = schedule_defaults
  std::int64_t t2 = -1;
  double tau0 = 0.5;
  double grid_resolution = 0.0;
  double fixed_value = 1.0;         // "fixed" tuner only
};

/// Factory by name: cdt, syndicated (alias tl), op, theory, fixed.
std::unique_ptr<Tuner> make_tuner(std::string_view name, std::span<const HyperparamSpec> specs,
                                  const TunerOptions& options);

}  // namespace zoomtune

#endif  // ZOOMTUNE_TUNERS_HPP_
