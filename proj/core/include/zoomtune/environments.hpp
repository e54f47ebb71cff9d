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

// Reward-generating testbeds.
//
// Environments never own a random stream: every sampling call takes the
// generator explicitly so that the harness can feed identical streams to the
// methods it compares.

#ifndef ZOOMTUNE_ENVIRONMENTS_HPP_
#define ZOOMTUNE_ENVIRONMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zoomtune/glb.hpp"
#include "zoomtune/linalg.hpp"
#include "zoomtune/rng.hpp"

namespace zoomtune {

/// Contextual testbed with a fixed hidden parameter theta*.
class GlbEnvironment {
 public:
  virtual ~GlbEnvironment() = default;

  virtual std::size_t num_arms() const = 0;
  /// This round's arm set.
  virtual std::vector<Vector> gen_arms(std::int64_t t, SeededRng& rng) const = 0;

  int dim() const { return static_cast<int>(theta_star_.size()); }
  Link link() const { return link_; }
  double noise_sigma() const { return noise_sigma_; }
  const Vector& theta_star() const { return theta_star_; }

  /// mu(x^T theta*).
  double mean_reward(const Vector& x) const;
  /// Identity link: mean plus N(0, sigma^2). Logistic link: Bernoulli(mean).
  double draw_reward(const Vector& x, SeededRng& rng) const;
  double optimal_mean(std::span<const Vector> arms) const;

 protected:
  GlbEnvironment(Link link, double noise_sigma, Vector theta_star);

 private:
  Link link_;
  double noise_sigma_;
  Vector theta_star_;
};

/// Arms and theta* with coordinates i.i.d. Uniform(-1/sqrt(d), 1/sqrt(d)).
class SyntheticGlbEnv final : public GlbEnvironment {
 public:
  SyntheticGlbEnv(int dim, std::size_t num_arms, Link link, double noise_sigma,
                  SeededRng& setup_rng);
  /// Fixed theta* (scaled into the unit ball if needed).
  SyntheticGlbEnv(std::size_t num_arms, Link link, double noise_sigma, Vector theta_star);

  std::size_t num_arms() const override { return num_arms_; }
  std::vector<Vector> gen_arms(std::int64_t t, SeededRng& rng) const override;

 private:
  std::size_t num_arms_;
};

/// Pre-factorized user and item feature matrices. theta* is the average of
/// `theta_users` distinct random user rows; each round offers `num_arms`
/// distinct random items.
class CsvDatasetEnv final : public GlbEnvironment {
 public:
  CsvDatasetEnv(std::shared_ptr<const Matrix> users, std::shared_ptr<const Matrix> items,
                std::size_t num_arms, std::size_t theta_users, Link link, double noise_sigma,
                SeededRng& setup_rng);

  std::size_t num_arms() const override { return num_arms_; }
  std::vector<Vector> gen_arms(std::int64_t t, SeededRng& rng) const override;

 private:
  std::shared_ptr<const Matrix> items_;
  std::size_t num_arms_;
};

/// Parses comma-separated rows of exactly `dim` numbers. Blank lines and
/// lines starting with '#' are skipped. Every row is divided by
/// max(1, |row|). Throws InputError naming `source` and the line number.
Matrix parse_csv_matrix(std::istream& in, int dim, std::string_view source = "<stream>");
Matrix load_csv_matrix(const std::filesystem::path& path, int dim);

enum class LipschitzFamily { kTriangle, kSine };

LipschitzFamily parse_family(std::string_view name);
std::string_view to_string(LipschitzFamily family);

/// Triangle: 0.9 - 0.9 |x - a|. Sine: 2/(3 pi) sin(3 pi/2 (x - a + 1/3)).
double lipschitz_family_eval(LipschitzFamily family, double peak, double x);
/// Maximum of the family over [0, 1], attained at x = peak.
double lipschitz_family_max(LipschitzFamily family);

const std::vector<double>& default_peak_locations();

/// Piecewise-stationary 1-d Lipschitz testbed on [0, 1]. A change round c
/// means rounds 1..c and c+1.. use different peaks.
class SwitchingLipschitzEnv {
 public:
  /// peaks.size() must be change_rounds.size() + 1; change rounds strictly
  /// increasing inside [1, horizon - 1].
  SwitchingLipschitzEnv(LipschitzFamily family, std::vector<std::int64_t> change_rounds,
                        std::vector<double> peaks, double noise_sigma, std::int64_t horizon);

  /// `num_changes` distinct change rounds uniform in [1, T-1]; the first peak
  /// uniform over `peak_set`, each later one uniform over the others.
  static SwitchingLipschitzEnv random(LipschitzFamily family, std::int64_t horizon,
                                      std::int64_t num_changes, std::span<const double> peak_set,
                                      double noise_sigma, SeededRng& rng);

  LipschitzFamily family() const { return family_; }
  std::int64_t horizon() const { return horizon_; }
  double noise_sigma() const { return noise_sigma_; }
  const std::vector<std::int64_t>& change_rounds() const { return change_rounds_; }
  const std::vector<double>& peaks() const { return peaks_; }

  double peak_at(std::int64_t t) const;
  /// f_t(x).
  double eval(double x, std::int64_t t) const;
  double optimal_mean(std::int64_t t) const;
  double draw_reward(double x, std::int64_t t, SeededRng& rng) const;

 private:
  LipschitzFamily family_;
  std::vector<std::int64_t> change_rounds_;
  std::vector<double> peaks_;
  double noise_sigma_;
  std::int64_t horizon_;
};

}  // namespace zoomtune

#endif  // ZOOMTUNE_ENVIRONMENTS_HPP_
