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

#include "zoomtune/zooming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include <spdlog/spdlog.h>

#include "zoomtune/errors.hpp"

namespace zoomtune {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const ZoomingConfig& c) {
  require(c.tau0 > 0.0, "ZoomingConfig: tau0 must be positive");
  require(c.horizon >= 2, "ZoomingConfig: horizon must be >= 2");
  require(c.dim >= 1, "ZoomingConfig: dim must be >= 1");
  require(c.grid_resolution > 0.0 && c.grid_resolution <= 0.1,
          "ZoomingConfig: grid_resolution must lie in (0, 0.1]");
  if (c.mode == ZoomingMode::kTsRestart) {
    require(c.epoch_len >= 1, "ZoomingConfig: epoch_len must be >= 1");
    require(c.horizon >= c.epoch_len, "ZoomingConfig: horizon must be >= epoch_len");
  }
}

ZoomingConfig with_default_grid(ZoomingConfig c) {
  if (c.grid_resolution == 0.0) c.grid_resolution = default_grid_resolution(c.dim);
  validate(c);
  return c;
}

}  // namespace

double squared_distance(const Point& a, const Point& b) {
  require(a.dim() == b.dim(), "squared_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double default_grid_resolution(int dim) {
  if (dim <= 1) return 1.0 / 200.0;
  if (dim == 2) return 1.0 / 64.0;
  return 1.0 / 16.0;
}

double confidence_radius(std::int64_t pulls, double tau0, std::int64_t horizon) {
  require(horizon >= 2, "confidence_radius: horizon must be >= 2");
  if (pulls <= 0) return kInf;
  return std::sqrt(13.0 * tau0 * tau0 * std::log(static_cast<double>(horizon)) /
                   (2.0 * static_cast<double>(pulls)));
}

double ts_scale(std::int64_t pulls, double tau0, std::int64_t horizon) {
  require(horizon >= 2, "ts_scale: horizon must be >= 2");
  if (pulls <= 0) return kInf;
  const double s0 =
      std::sqrt(52.0 * std::numbers::pi * tau0 * tau0 * std::log(static_cast<double>(horizon)));
  return s0 * std::sqrt(1.0 / static_cast<double>(pulls));
}

double perturbed_index(const ActiveArm& arm, const ZoomingConfig& config, SeededRng& rng) {
  if (arm.pulls <= 0) return kInf;
  const double s = ts_scale(arm.pulls, config.tau0, config.horizon);
  return arm.mean_reward + s * clipped_standard_normal(rng);
}

bool removal_condition(double mean_v, double radius_v, double mean_u, double radius_u) {
  return mean_v - mean_u > radius_v + 2.0 * radius_u;
}

// ---------------------------------------------------------------------------
// UniformGrid

UniformGrid::UniformGrid(int dim, double resolution) : dim_(dim) {
  require(dim >= 1, "UniformGrid: dim must be >= 1");
  require(resolution > 0.0 && resolution <= 1.0, "UniformGrid: resolution must lie in (0, 1]");
  per_axis_ = static_cast<std::size_t>(std::llround(1.0 / resolution)) + 1;
  size_ = 1;
  for (int i = 0; i < dim; ++i) size_ *= per_axis_;
}

double UniformGrid::coord(std::size_t index, int axis) const {
  std::size_t stride = 1;
  for (int k = dim_ - 1; k > axis; --k) stride *= per_axis_;
  const std::size_t i = (index / stride) % per_axis_;
  return static_cast<double>(i) / static_cast<double>(per_axis_ - 1);
}

Point UniformGrid::point(std::size_t index) const {
  Point p;
  p.coords.resize(static_cast<std::size_t>(dim_));
  for (int k = dim_ - 1; k >= 0; --k) {
    p.coords[static_cast<std::size_t>(k)] =
        static_cast<double>(index % per_axis_) / static_cast<double>(per_axis_ - 1);
    index /= per_axis_;
  }
  return p;
}

std::size_t UniformGrid::nearest_index(const Point& p) const {
  require(p.dim() == static_cast<std::size_t>(dim_), "nearest_index: dimension mismatch");
  std::size_t index = 0;
  const double steps = static_cast<double>(per_axis_ - 1);
  for (std::size_t k = 0; k < p.dim(); ++k) {
    const double clamped = std::clamp(p[k], 0.0, 1.0);
    index = index * per_axis_ + static_cast<std::size_t>(std::llround(clamped * steps));
  }
  return index;
}

// ---------------------------------------------------------------------------
// ZoomingBandit

ZoomingBandit::ZoomingBandit(ZoomingConfig config)
    : config_(with_default_grid(std::move(config))),
      grid_(config_.dim, config_.grid_resolution),
      mask_(grid_.size(), 1),
      cover_count_(grid_.size(), 0) {
  grid_coords_.reserve(grid_.size() * static_cast<std::size_t>(config_.dim));
  for (std::size_t g = 0; g < grid_.size(); ++g) {
    const Point p = grid_.point(g);
    grid_coords_.insert(grid_coords_.end(), p.coords.begin(), p.coords.end());
  }
  if (config_.mode == ZoomingMode::kOracleRestart) {
    oracle_restarts_.push_back(1);
    for (std::int64_t c : config_.change_points) {
      if (c < 1 || c >= config_.horizon) {
        ++ignored_change_points_;
        spdlog::warn("oracle restart schedule: change point {} outside [1, {}) ignored", c,
                     config_.horizon);
        continue;
      }
      oracle_restarts_.push_back(c + 1);
    }
    std::sort(oracle_restarts_.begin(), oracle_restarts_.end());
    oracle_restarts_.erase(std::unique(oracle_restarts_.begin(), oracle_restarts_.end()),
                           oracle_restarts_.end());
  }
}

bool ZoomingBandit::is_restart_round() const {
  if (round_ == 1) return true;
  switch (config_.mode) {
    case ZoomingMode::kTsRestart:
      return (round_ - 1) % config_.epoch_len == 0;
    case ZoomingMode::kPlain:
      return false;
    case ZoomingMode::kOracleRestart:
      return std::binary_search(oracle_restarts_.begin(), oracle_restarts_.end(), round_);
  }
  return false;
}

void ZoomingBandit::restart() {
  Point center;
  center.coords.assign(static_cast<std::size_t>(config_.dim), 0.5);
  active_.clear();
  active_.push_back(ActiveArm{std::move(center), 0, 0.0});
  std::fill(mask_.begin(), mask_.end(), 1);
  rebuild_cover_counts();
  ++restarts_;
}

void ZoomingBandit::reset_active_set(std::vector<ActiveArm> arms) {
  for (const ActiveArm& a : arms) {
    require(a.center.dim() == static_cast<std::size_t>(config_.dim),
            "reset_active_set: arm dimension mismatch");
  }
  std::sort(arms.begin(), arms.end(),
            [](const ActiveArm& a, const ActiveArm& b) { return a.center < b.center; });
  active_ = std::move(arms);
  std::fill(mask_.begin(), mask_.end(), 1);
  rebuild_cover_counts();
}

double ZoomingBandit::radius(const ActiveArm& arm) const {
  return confidence_radius(arm.pulls, config_.tau0, config_.horizon);
}

double ZoomingBandit::index_of(const ActiveArm& arm, SeededRng& rng) const {
  if (arm.pulls <= 0) return kInf;
  if (config_.mode == ZoomingMode::kPlain) return arm.mean_reward + 2.0 * radius(arm);
  return perturbed_index(arm, config_, rng);
}

double ZoomingBandit::squared_radius(std::int64_t pulls) const {
  if (pulls <= 0) return kInf;
  const double r = confidence_radius(pulls, config_.tau0, config_.horizon);
  return r * r;
}

bool ZoomingBandit::within(const Point& center, double r2, std::size_t grid_index) const {
  if (r2 == kInf) return true;
  const double* x = grid_coords_.data() + grid_index * center.dim();
  double s = 0.0;
  for (std::size_t k = 0; k < center.dim(); ++k) {
    const double d = x[k] - center[k];
    s += d * d;
  }
  return s <= r2;
}

void ZoomingBandit::rebuild_cover_counts() {
  std::fill(cover_count_.begin(), cover_count_.end(), 0);
  for (const ActiveArm& arm : active_) {
    const double r2 = squared_radius(arm.pulls);
    for (std::size_t g = 0; g < grid_.size(); ++g) {
      if (within(arm.center, r2, g)) ++cover_count_[g];
    }
  }
}

std::size_t ZoomingBandit::insert_sorted(ActiveArm arm) {
  auto it = std::lower_bound(active_.begin(), active_.end(), arm.center,
                             [](const ActiveArm& a, const Point& c) { return a.center < c; });
  it = active_.insert(it, std::move(arm));
  return static_cast<std::size_t>(it - active_.begin());
}

std::size_t ZoomingBandit::mask_count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

bool ZoomingBandit::removal_pass() {
  if (active_.size() < 2) return false;
  // Some v satisfies the rule for u iff max_v (f_v - r_v) > f_u + 2 r_u;
  // v = u never qualifies because radii are non-negative.
  double best_lower = -kInf;
  for (const ActiveArm& v : active_) {
    if (v.pulls > 0) best_lower = std::max(best_lower, v.mean_reward - radius(v));
  }
  for (std::size_t i = 0; i < active_.size(); ++i) {
    const ActiveArm& u = active_[i];
    if (u.pulls <= 0) continue;
    const double ru = radius(u);
    if (!(best_lower > u.mean_reward + 2.0 * ru)) continue;

    const double r2 = squared_radius(u.pulls);
    for (std::size_t g = 0; g < grid_.size(); ++g) {
      if (within(u.center, r2, g)) {
        --cover_count_[g];
        mask_[g] = 0;
      }
    }
    active_.erase(active_.begin() + static_cast<std::ptrdiff_t>(i));
    ++removals_;
    return true;
  }
  return false;
}

std::optional<Point> ZoomingBandit::coverage_and_activation() {
  for (std::size_t g = 0; g < grid_.size(); ++g) {
    if (mask_[g] == 0 || cover_count_[g] > 0) continue;
    ActiveArm arm{grid_.point(g), 0, 0.0};
    Point center = arm.center;
    insert_sorted(std::move(arm));
    for (std::int32_t& c : cover_count_) ++c;
    return center;
  }
  return std::nullopt;
}

Point ZoomingBandit::select_arm(SeededRng& rng) {
  require(!pending_.has_value(), "select_arm: previous round has not been updated");
  require(round_ <= config_.horizon, "select_arm: round " + std::to_string(round_) +
                                         " exceeds horizon " + std::to_string(config_.horizon));

  if (is_restart_round()) {
    restart();
  } else if (config_.mode != ZoomingMode::kPlain) {
    removal_pass();
  }
  require(!active_.empty(), "select_arm: empty active set");

  last_indices_.clear();
  if (std::optional<Point> fresh = coverage_and_activation()) {
    auto it = std::lower_bound(active_.begin(), active_.end(), *fresh,
                               [](const ActiveArm& a, const Point& c) { return a.center < c; });
    pending_ = static_cast<std::size_t>(it - active_.begin());
    return *fresh;
  }

  last_indices_.reserve(active_.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < active_.size(); ++i) {
    last_indices_.push_back(index_of(active_[i], rng));
    if (last_indices_[i] > last_indices_[best]) best = i;
  }
  pending_ = best;
  return active_[best].center;
}

void ZoomingBandit::update(const Point& pulled, double reward) {
  require(pending_.has_value(), "update: no arm was selected this round");
  ActiveArm& arm = active_[*pending_];
  require(arm.center == pulled, "update: point is not the arm pulled this round");

  const std::int64_t old_pulls = arm.pulls;
  arm.pulls = old_pulls + 1;
  arm.mean_reward = (arm.mean_reward * static_cast<double>(old_pulls) + reward) /
                    static_cast<double>(arm.pulls);
  const double old_r2 = squared_radius(old_pulls);
  const double new_r2 = squared_radius(arm.pulls);
  for (std::size_t g = 0; g < grid_.size(); ++g) {
    if (within(arm.center, old_r2, g) && !within(arm.center, new_r2, g)) --cover_count_[g];
  }
  pending_.reset();
  ++round_;
}

// ---------------------------------------------------------------------------
// DoubleRestartZooming

DoubleRestartZooming::DoubleRestartZooming(std::int64_t horizon, double p_u, ZoomingConfig base)
    : base_(std::move(base)), meta_(double_restarts_ladder(horizon, p_u)) {
  base_.horizon = horizon;
  base_.mode = ZoomingMode::kTsRestart;
}

std::int64_t DoubleRestartZooming::current_epoch_len() const {
  return inner_ ? inner_->config().epoch_len : 0;
}

Point DoubleRestartZooming::select_arm(SeededRng& rng) {
  require(round_ <= meta_.horizon, "DoubleRestartZooming: round exceeds horizon");
  if ((round_ - 1) % meta_.top_epoch_len == 0) {
    const std::vector<double> probs = meta_.exp3.probabilities();
    chosen_ = meta_.exp3.sample(rng);
    chosen_prob_ = probs[chosen_];
    epoch_reward_ = 0.0;
    ZoomingConfig cfg = base_;
    cfg.epoch_len = meta_.ladder[chosen_];
    inner_.emplace(cfg);
  }
  return inner_->select_arm(rng);
}

void DoubleRestartZooming::update(const Point& pulled, double reward) {
  require(inner_.has_value(), "DoubleRestartZooming: update before select");
  inner_->update(pulled, reward);
  epoch_reward_ += reward;
  const bool epoch_done = round_ % meta_.top_epoch_len == 0 || round_ == meta_.horizon;
  if (epoch_done) exp3_update(meta_, chosen_, epoch_reward_, chosen_prob_);
  ++round_;
}

// ---------------------------------------------------------------------------

std::int64_t estimate_zooming_number(const UniformGrid& grid, std::span<const double> values,
                                     double r) {
  require(values.size() == grid.size(), "estimate_zooming_number: values do not match grid");
  require(r > 0.0 && r <= 1.0, "estimate_zooming_number: r must lie in (0, 1]");
  if (values.empty()) return 0;
  const double best = *std::max_element(values.begin(), values.end());

  std::vector<std::size_t> members;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double badness = best - values[g];
    if (badness > r / 2.0 && badness <= r) members.push_back(g);
  }
  std::vector<bool> covered(members.size(), false);
  std::int64_t balls = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (covered[i]) continue;
    ++balls;
    const Point c = grid.point(members[i]);
    for (std::size_t j = i; j < members.size(); ++j) {
      if (!covered[j] && squared_distance(c, grid.point(members[j])) <= r * r) covered[j] = true;
    }
  }
  return balls;
}

}  // namespace zoomtune
