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

// Continuum-armed Lipschitz bandits on [0,1]^p under switching rewards.
//
// ZoomingBandit runs one of three schedules over the same adaptive
// discretization:
//   * kTsRestart      Thompson-sampling zooming with a removal step, fully
//                     restarted every `epoch_len` rounds;
//   * kPlain          classic zooming with a UCB index, never restarted and
//                     never removing arms;
//   * kOracleRestart  the Thompson variant restarted right after each known
//                     change point.
// DoubleRestartZooming wraps the Thompson variant in an EXP3 layer that picks
// the restart period once per fixed-length top epoch.
//
// The continuous candidate region is represented by a uniform grid; only grid
// points can be activated, and removal masks grid points out.

#ifndef ZOOMTUNE_ZOOMING_HPP_
#define ZOOMTUNE_ZOOMING_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zoomtune/exp3.hpp"
#include "zoomtune/rng.hpp"

namespace zoomtune {

/// A point of the normalized box [0,1]^p.
struct Point {
  std::vector<double> coords;

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  auto operator<=>(const Point&) const = default;
};

double squared_distance(const Point& a, const Point& b);

struct ActiveArm {
  Point center;
  std::int64_t pulls = 0;     // since the last restart
  double mean_reward = 0.0;   // 0 while pulls == 0
};

enum class ZoomingMode { kTsRestart, kPlain, kOracleRestart };

struct ZoomingConfig {
  double tau0 = 0.5;              // sub-Gaussian scale of the reward noise
  std::int64_t horizon = 0;       // T, enters the radii through ln T
  std::int64_t epoch_len = 0;     // H; kTsRestart only
  int dim = 1;
  double grid_resolution = 0.0;   // spacing of the stand-in grid; 0 = default
  ZoomingMode mode = ZoomingMode::kTsRestart;
  std::vector<std::int64_t> change_points;  // kOracleRestart only
};

/// 1/200 for p = 1, 1/64 for p = 2, 1/16 above.
double default_grid_resolution(int dim);

/// sqrt(13 tau0^2 ln T / (2 n)); +inf for n = 0.
double confidence_radius(std::int64_t pulls, double tau0, std::int64_t horizon);

/// sqrt(52 pi tau0^2 ln T) / sqrt(n); +inf for n = 0.
double ts_scale(std::int64_t pulls, double tau0, std::int64_t horizon);

/// f_hat + s * Z with Z clipped-normal; +inf for an unpulled arm.
double perturbed_index(const ActiveArm& arm, const ZoomingConfig& config, SeededRng& rng);

/// Removal rule for the pair (u, v): mean_v - mean_u > r_v + 2 r_u, strict.
bool removal_condition(double mean_v, double radius_v, double mean_u, double radius_u);

/// Regular grid over [0,1]^p with n points per axis, enumerated in
/// lexicographic order (axis 0 most significant).
class UniformGrid {
 public:
  UniformGrid(int dim, double resolution);

  int dim() const { return dim_; }
  std::size_t per_axis() const { return per_axis_; }
  std::size_t size() const { return size_; }
  double coord(std::size_t index, int axis) const;
  Point point(std::size_t index) const;
  /// Grid index closest to `p` (coordinate-wise rounding).
  std::size_t nearest_index(const Point& p) const;

 private:
  int dim_;
  std::size_t per_axis_;
  std::size_t size_;
};

class ZoomingBandit {
 public:
  explicit ZoomingBandit(ZoomingConfig config);

  /// One round of the schedule: restart if due, otherwise one removal pass
  /// (Thompson modes only); activate the lexicographically first uncovered
  /// grid point if any and pull it, else pull the arm with the largest index
  /// (ties to the smallest center).
  Point select_arm(SeededRng& rng);

  /// Feeds back the reward of the arm returned by the preceding select_arm.
  void update(const Point& pulled, double reward);

  // The individual steps of select_arm, exposed for direct testing.
  bool is_restart_round() const;
  void restart();
  /// Removes at most one arm: the first u (lexicographic) for which some
  /// active v satisfies removal_condition. Returns whether an arm was removed.
  bool removal_pass();
  /// Activates and returns the first uncovered unmasked grid point, if any.
  std::optional<Point> coverage_and_activation();

  /// Replaces the active set (kept sorted) and resets the mask to all-true.
  /// Used to set up specific states; the round counter is untouched.
  void reset_active_set(std::vector<ActiveArm> arms);

  const ZoomingConfig& config() const { return config_; }
  std::int64_t round() const { return round_; }
  std::span<const ActiveArm> active_arms() const { return active_; }
  const UniformGrid& grid() const { return grid_; }
  bool mask(std::size_t grid_index) const { return mask_[grid_index] != 0; }
  std::size_t mask_count() const;
  double radius(const ActiveArm& arm) const;
  double index_of(const ActiveArm& arm, SeededRng& rng) const;

  std::int64_t restart_count() const { return restarts_; }
  std::int64_t removal_count() const { return removals_; }
  std::int64_t ignored_change_points() const { return ignored_change_points_; }
  /// Indices computed by the last selection step, aligned with active_arms()
  /// as it stood at that moment. Empty after an activation round.
  std::span<const double> last_indices() const { return last_indices_; }

 private:
  double squared_radius(std::int64_t pulls) const;
  bool within(const Point& center, double r2, std::size_t grid_index) const;
  void rebuild_cover_counts();
  std::size_t insert_sorted(ActiveArm arm);

  ZoomingConfig config_;
  UniformGrid grid_;
  std::vector<ActiveArm> active_;        // sorted by center
  std::vector<double> grid_coords_;      // row-major copy of the grid points
  std::vector<std::uint8_t> mask_;       // 1 = still in the candidate region
  std::vector<std::int32_t> cover_count_;
  std::vector<std::int64_t> oracle_restarts_;
  std::vector<double> last_indices_;
  std::int64_t round_ = 1;
  std::optional<std::size_t> pending_;   // arm pulled this round
  std::int64_t restarts_ = 0;
  std::int64_t removals_ = 0;
  std::int64_t ignored_change_points_ = 0;
};

/// Thompson zooming whose restart period is chosen by EXP3 from a halving
/// ladder, re-drawn at the start of every top epoch of length H0.
class DoubleRestartZooming {
 public:
  DoubleRestartZooming(std::int64_t horizon, double p_u, ZoomingConfig base);

  Point select_arm(SeededRng& rng);
  void update(const Point& pulled, double reward);

  const Exp3Meta& meta() const { return meta_; }
  std::int64_t round() const { return round_; }
  std::int64_t current_epoch_len() const;

 private:
  ZoomingConfig base_;
  Exp3Meta meta_;
  std::optional<ZoomingBandit> inner_;
  std::size_t chosen_ = 0;
  double chosen_prob_ = 1.0;
  double epoch_reward_ = 0.0;
  std::int64_t round_ = 1;
};

/// Greedy cover count of {v : r/2 < max f - f(v) <= r} on the grid with
/// balls of radius r. An upper bound on the r-zooming number at grid scale.
std::int64_t estimate_zooming_number(const UniformGrid& grid, std::span<const double> values,
                                     double r);

}  // namespace zoomtune

#endif  // ZOOMTUNE_ZOOMING_HPP_
