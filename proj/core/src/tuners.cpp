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

#include "zoomtune/tuners.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zoomtune/errors.hpp"

namespace zoomtune {
namespace {

ZoomingConfig top_layer_config(const CdtConfig& c) {
  require(!c.box.empty(), "cdt: empty box");
  for (const Interval& i : c.box) require(i.low <= i.high, "cdt: interval with low > high");
  require(c.t1 >= 0, "cdt: T1 must be >= 0");
  require(c.t2 >= 1, "cdt: T2 must be >= 1");
  require(c.horizon - c.t1 >= 2, "cdt: need at least two rounds after warm-up");
  ZoomingConfig z;
  z.tau0 = c.tau0;
  z.horizon = c.horizon - c.t1;
  z.epoch_len = std::min(c.t2, z.horizon);
  z.dim = static_cast<int>(c.box.size());
  z.grid_resolution = c.grid_resolution;
  z.mode = ZoomingMode::kTsRestart;
  return z;
}

std::vector<double> theoretical_tail(std::span<const HyperparamSpec> specs, std::int64_t t) {
  std::vector<double> values;
  for (std::size_t i = 1; i < specs.size(); ++i) values.push_back(specs[i].theoretical(t));
  return values;
}

}  // namespace

Box box_of(std::span<const HyperparamSpec> specs) {
  Box box;
  for (const HyperparamSpec& s : specs) box.push_back({s.low, s.high});
  return box;
}

std::vector<double> affine_map(const Point& u, const Box& box) {
  require(u.dim() == box.size(), "affine_map: dimension mismatch");
  std::vector<double> out(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    require(u[i] >= 0.0 && u[i] <= 1.0, "affine_map: point outside [0,1]^p");
    out[i] = box[i].low + u[i] * (box[i].high - box[i].low);
  }
  return out;
}

Point affine_unmap(std::span<const double> native, const Box& box) {
  require(native.size() == box.size(), "affine_unmap: dimension mismatch");
  Point u;
  u.coords.resize(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    const Interval& in = box[i];
    if (native[i] < in.low || native[i] > in.high) {
      throw InputError("affine_unmap: value " + std::to_string(native[i]) +
                       " outside [" + std::to_string(in.low) + ", " +
                       std::to_string(in.high) + "]");
    }
    u.coords[i] = in.high == in.low ? 0.5 : (native[i] - in.low) / (in.high - in.low);
  }
  return u;
}

const std::vector<double>& candidate_set_c1() {
  static const std::vector<double> c1{0.1, 1.0, 2.0, 3.0, 4.0, 5.0};
  return c1;
}

const std::vector<double>& candidate_set_c2() {
  static const std::vector<double> c2{0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0,
                                      2.5, 3.0,  3.5, 4.0,  4.5, 5.0};
  return c2;
}

Proposal Tuner::propose(std::int64_t t, SeededRng& rng) {
  require(!pending_, std::string(name()) + ": propose called twice without feedback");
  require(t >= 1, std::string(name()) + ": rounds start at 1");
  Proposal p = do_propose(t, rng);
  pending_ = true;
  return p;
}

void Tuner::feedback(double y) {
  require(pending_, std::string(name()) + ": feedback without a preceding propose");
  pending_ = false;
  do_feedback(y);
}

Schedule schedule_defaults(std::int64_t horizon, int p) {
  require(horizon >= 4 && p >= 1, "schedule_defaults: need T >= 4 and p >= 1");
  const double t = static_cast<double>(horizon);
  Schedule s;
  s.t1 = static_cast<std::int64_t>(std::floor(std::pow(t, 2.0 / (p + 3.0))));
  s.t2 = static_cast<std::int64_t>(std::floor(3.0 * std::pow(t, (p + 2.0) / (p + 3.0))));
  s.t2 = std::max<std::int64_t>(s.t2, 1);
  return s;
}

// CDT ------------------------------------------------------------------------

CdtTuner::CdtTuner(CdtConfig config) : config_(std::move(config)), top_(top_layer_config(config_)) {}

Proposal CdtTuner::do_propose(std::int64_t t, SeededRng& rng) {
  require(t <= config_.horizon, "cdt: round beyond the horizon");
  pulled_.reset();
  if (t <= config_.t1) {
    Point center;
    center.coords.assign(config_.box.size(), 0.5);
    return {affine_map(center, config_.box), true};
  }
  pulled_ = top_.select_arm(rng);
  return {affine_map(*pulled_, config_.box), false};
}

void CdtTuner::do_feedback(double y) {
  if (!pulled_) return;
  if (y < 0.0 || y > 1.0) ++out_of_range_;
  top_.update(*pulled_, y);
  pulled_.reset();
}

// Syndicated -----------------------------------------------------------------

SyndicatedTuner::SyndicatedTuner(std::vector<std::vector<double>> candidates,
                                 std::int64_t horizon, double gamma)
    : candidates_(std::move(candidates)) {
  require(!candidates_.empty(), "syndicated: no hyperparameters");
  for (const auto& c : candidates_) {
    require(!c.empty(), "syndicated: empty candidate list");
    learners_.emplace_back(c.size(), gamma < 0.0 ? exp3_gamma(c.size(), horizon) : gamma);
  }
  chosen_.assign(candidates_.size(), 0);
  chosen_prob_.assign(candidates_.size(), 1.0);
}

Proposal SyndicatedTuner::do_propose(std::int64_t, SeededRng& rng) {
  Proposal p;
  for (std::size_t i = 0; i < learners_.size(); ++i) {
    const std::vector<double> probs = learners_[i].probabilities();
    chosen_[i] = learners_[i].sample(rng);
    chosen_prob_[i] = probs[chosen_[i]];
    p.values.push_back(candidates_[i][chosen_[i]]);
  }
  return p;
}

void SyndicatedTuner::do_feedback(double y) {
  for (std::size_t i = 0; i < learners_.size(); ++i) {
    learners_[i].update(chosen_[i], y, chosen_prob_[i]);
  }
}

// OP -------------------------------------------------------------------------

OpTuner::OpTuner(std::vector<double> candidates, std::vector<HyperparamSpec> specs)
    : candidates_(std::move(candidates)), specs_(std::move(specs)) {
  require(!candidates_.empty(), "op: empty candidate list");
  require(!specs_.empty(), "op: no hyperparameters");
  counts_.assign(candidates_.size(), 0);
  means_.assign(candidates_.size(), 0.0);
}

void OpTuner::set_statistics(std::size_t index, std::int64_t count, double mean) {
  require(index < candidates_.size() && count >= 0, "op: bad statistics");
  counts_[index] = count;
  means_[index] = mean;
}

Proposal OpTuner::do_propose(std::int64_t t, SeededRng& rng) {
  std::vector<double> draws(candidates_.size());
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    draws[c] = means_[c] + rng.normal() / std::sqrt(static_cast<double>(counts_[c] + 1));
  }
  chosen_ = argmax_first(draws);
  Proposal p;
  p.values.push_back(candidates_[chosen_]);
  for (double v : theoretical_tail(specs_, t)) p.values.push_back(v);
  return p;
}

void OpTuner::do_feedback(double y) {
  ++counts_[chosen_];
  means_[chosen_] += (y - means_[chosen_]) / static_cast<double>(counts_[chosen_]);
}

// Theory / fixed -------------------------------------------------------------

TheoryTuner::TheoryTuner(std::vector<HyperparamSpec> specs) : specs_(std::move(specs)) {
  require(!specs_.empty(), "theory: no hyperparameters");
}

Proposal TheoryTuner::do_propose(std::int64_t t, SeededRng&) {
  Proposal p;
  for (const HyperparamSpec& s : specs_) p.values.push_back(s.theoretical(t));
  return p;
}

FixedTuner::FixedTuner(double value, std::vector<HyperparamSpec> specs)
    : value_(value), specs_(std::move(specs)) {
  require(!specs_.empty(), "fixed: no hyperparameters");
}

Proposal FixedTuner::do_propose(std::int64_t t, SeededRng&) {
  Proposal p;
  p.values.push_back(value_);
  for (double v : theoretical_tail(specs_, t)) p.values.push_back(v);
  return p;
}

std::unique_ptr<Tuner> make_tuner(std::string_view name, std::span<const HyperparamSpec> specs,
                                  const TunerOptions& options) {
  require(!specs.empty(), "make_tuner: algorithm has no hyperparameters");
  const std::vector<double>& cands =
      options.candidates.empty() ? candidate_set_c1() : options.candidates;
  std::vector<HyperparamSpec> spec_list(specs.begin(), specs.end());

  if (name == "cdt") {
    const Schedule defaults = schedule_defaults(options.horizon, static_cast<int>(specs.size()));
    CdtConfig c;
    c.box = box_of(specs);
    c.horizon = options.horizon;
    c.t1 = options.t1 >= 0 ? options.t1 : defaults.t1;
    c.t2 = options.t2 >= 0 ? options.t2 : defaults.t2;
    c.tau0 = options.tau0;
    c.grid_resolution = options.grid_resolution;
    return std::make_unique<CdtTuner>(std::move(c));
  }
  if (name == "syndicated" || name == "tl") {
    return std::make_unique<SyndicatedTuner>(
        std::vector<std::vector<double>>(specs.size(), cands), options.horizon);
  }
  if (name == "op") return std::make_unique<OpTuner>(cands, std::move(spec_list));
  if (name == "theory") return std::make_unique<TheoryTuner>(std::move(spec_list));
  if (name == "fixed") return std::make_unique<FixedTuner>(options.fixed_value, std::move(spec_list));
  throw InputError("unknown tuner '" + std::string(name) +
                   "' (expected cdt, syndicated, tl, op, theory or fixed)");
}

}  // namespace zoomtune
