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

#include "zoomtune/environments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <string>

#include "zoomtune/errors.hpp"

namespace zoomtune {
namespace {

Vector into_unit_ball(Vector v) {
  const double n = v.norm();
  if (n > 1.0) v /= n;
  return v;
}

Vector uniform_cube_vector(int dim, SeededRng& rng) {
  const double half = 1.0 / std::sqrt(static_cast<double>(dim));
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.uniform(-half, half);
  return v;
}

// First k entries of a uniformly random permutation of 0..n-1.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, SeededRng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

GlbEnvironment::GlbEnvironment(Link link, double noise_sigma, Vector theta_star)
    : link_(link), noise_sigma_(noise_sigma), theta_star_(into_unit_ball(std::move(theta_star))) {
  require(noise_sigma_ >= 0.0, "environment: noise sigma must be >= 0");
  require(theta_star_.size() >= 1, "environment: empty theta*");
}

double GlbEnvironment::mean_reward(const Vector& x) const {
  require(x.size() == theta_star_.size(), "environment: arm dimension mismatch");
  return link_mean(link_, x.dot(theta_star_));
}

double GlbEnvironment::draw_reward(const Vector& x, SeededRng& rng) const {
  const double mean = mean_reward(x);
  if (link_ == Link::kLogistic) return rng.bernoulli(mean) ? 1.0 : 0.0;
  return mean + noise_sigma_ * rng.normal();
}

double GlbEnvironment::optimal_mean(std::span<const Vector> arms) const {
  require(!arms.empty(), "optimal_mean: empty arm set");
  double best = mean_reward(arms[0]);
  for (std::size_t i = 1; i < arms.size(); ++i) best = std::max(best, mean_reward(arms[i]));
  return best;
}

SyntheticGlbEnv::SyntheticGlbEnv(int dim, std::size_t num_arms, Link link, double noise_sigma,
                                 SeededRng& setup_rng)
    : GlbEnvironment(link, noise_sigma,
                     (require(dim >= 1, "synthetic env: dim must be >= 1"),
                      uniform_cube_vector(dim, setup_rng))),
      num_arms_(num_arms) {
  require(num_arms_ >= 1, "synthetic env: need at least one arm");
}

SyntheticGlbEnv::SyntheticGlbEnv(std::size_t num_arms, Link link, double noise_sigma,
                                 Vector theta_star)
    : GlbEnvironment(link, noise_sigma, std::move(theta_star)), num_arms_(num_arms) {
  require(num_arms_ >= 1, "synthetic env: need at least one arm");
}

std::vector<Vector> SyntheticGlbEnv::gen_arms(std::int64_t, SeededRng& rng) const {
  std::vector<Vector> arms;
  arms.reserve(num_arms_);
  for (std::size_t k = 0; k < num_arms_; ++k) arms.push_back(uniform_cube_vector(dim(), rng));
  return arms;
}

namespace {

Vector average_user(const Matrix& users, std::size_t theta_users, SeededRng& rng) {
  require(users.rows() >= 1, "csv env: empty user matrix");
  require(theta_users >= 1 && theta_users <= static_cast<std::size_t>(users.rows()),
          "csv env: theta_users must lie in [1, number of users]");
  Vector sum = Vector::Zero(users.cols());
  for (std::size_t r : sample_without_replacement(users.rows(), theta_users, rng)) {
    sum += users.row(static_cast<Eigen::Index>(r)).transpose();
  }
  return sum / static_cast<double>(theta_users);
}

}  // namespace

CsvDatasetEnv::CsvDatasetEnv(std::shared_ptr<const Matrix> users,
                             std::shared_ptr<const Matrix> items, std::size_t num_arms,
                             std::size_t theta_users, Link link, double noise_sigma,
                             SeededRng& setup_rng)
    : GlbEnvironment(link, noise_sigma,
                     (require(users && items, "csv env: missing matrix"),
                      average_user(*users, theta_users, setup_rng))),
      items_(std::move(items)),
      num_arms_(num_arms) {
  require(items_->cols() == dim(), "csv env: user and item dimensions differ");
  require(num_arms_ >= 1, "csv env: need at least one arm");
  if (num_arms_ > static_cast<std::size_t>(items_->rows())) {
    throw InputError("csv env: K = " + std::to_string(num_arms_) + " exceeds the " +
                     std::to_string(items_->rows()) + " available items");
  }
}

std::vector<Vector> CsvDatasetEnv::gen_arms(std::int64_t, SeededRng& rng) const {
  std::vector<Vector> arms;
  arms.reserve(num_arms_);
  for (std::size_t r : sample_without_replacement(items_->rows(), num_arms_, rng)) {
    arms.push_back(items_->row(static_cast<Eigen::Index>(r)).transpose());
  }
  return arms;
}

Matrix parse_csv_matrix(std::istream& in, int dim, std::string_view source) {
  require(dim >= 1, "parse_csv_matrix: dim must be >= 1");
  std::vector<double> values;
  std::string line;
  std::int64_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw InputError(std::string(source) + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    int fields = 0;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = body.find(',', pos);
      const std::string_view field =
          trim(body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos));
      double v = 0.0;
      const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc() || end != field.data() + field.size() ||
          !std::isfinite(v)) {
        fail("field " + std::to_string(fields + 1) + " is not a number: '" + std::string(field) +
             "'");
      }
      if (++fields > dim) fail("expected " + std::to_string(dim) + " fields, got more");
      values.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (fields != dim) {
      fail("expected " + std::to_string(dim) + " fields, got " + std::to_string(fields));
    }
  }
  if (values.empty()) throw InputError(std::string(source) + ": no data rows");

  const Eigen::Index rows = static_cast<Eigen::Index>(values.size()) / dim;
  Matrix m(rows, dim);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (int c = 0; c < dim; ++c) m(r, c) = values[static_cast<std::size_t>(r * dim + c)];
    const double n = m.row(r).norm();
    if (n > 1.0) m.row(r) /= n;
  }
  return m;
}

Matrix load_csv_matrix(const std::filesystem::path& path, int dim) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_csv_matrix(in, dim, path.string());
}

LipschitzFamily parse_family(std::string_view name) {
  if (name == "triangle") return LipschitzFamily::kTriangle;
  if (name == "sine") return LipschitzFamily::kSine;
  throw InputError("unknown function family '" + std::string(name) +
                   "' (expected triangle or sine)");
}

std::string_view to_string(LipschitzFamily family) {
  return family == LipschitzFamily::kTriangle ? "triangle" : "sine";
}

double lipschitz_family_eval(LipschitzFamily family, double peak, double x) {
  if (family == LipschitzFamily::kTriangle) return 0.9 - 0.9 * std::abs(x - peak);
  return 2.0 / (3.0 * std::numbers::pi) *
         std::sin(1.5 * std::numbers::pi * (x - peak + 1.0 / 3.0));
}

double lipschitz_family_max(LipschitzFamily family) {
  return family == LipschitzFamily::kTriangle ? 0.9 : 2.0 / (3.0 * std::numbers::pi);
}

const std::vector<double>& default_peak_locations() {
  static const std::vector<double> peaks{0.05, 0.25, 0.45, 0.70, 0.95};
  return peaks;
}

SwitchingLipschitzEnv::SwitchingLipschitzEnv(LipschitzFamily family,
                                             std::vector<std::int64_t> change_rounds,
                                             std::vector<double> peaks, double noise_sigma,
                                             std::int64_t horizon)
    : family_(family),
      change_rounds_(std::move(change_rounds)),
      peaks_(std::move(peaks)),
      noise_sigma_(noise_sigma),
      horizon_(horizon) {
  require(horizon_ >= 2, "lipschitz env: horizon must be >= 2");
  require(noise_sigma_ >= 0.0, "lipschitz env: noise sigma must be >= 0");
  require(peaks_.size() == change_rounds_.size() + 1,
          "lipschitz env: need exactly one more peak than change rounds");
  for (std::size_t i = 0; i < change_rounds_.size(); ++i) {
    require(change_rounds_[i] >= 1 && change_rounds_[i] <= horizon_ - 1,
            "lipschitz env: change round outside [1, T-1]");
    require(i == 0 || change_rounds_[i] > change_rounds_[i - 1],
            "lipschitz env: change rounds must be strictly increasing");
    require(peaks_[i] != peaks_[i + 1], "lipschitz env: consecutive peaks must differ");
  }
  for (double a : peaks_) require(a >= 0.0 && a <= 1.0, "lipschitz env: peak outside [0,1]");
}

SwitchingLipschitzEnv SwitchingLipschitzEnv::random(LipschitzFamily family, std::int64_t horizon,
                                                    std::int64_t num_changes,
                                                    std::span<const double> peak_set,
                                                    double noise_sigma, SeededRng& rng) {
  require(num_changes >= 0 && num_changes <= horizon - 1,
          "lipschitz env: change count must lie in [0, T-1]");
  require(!peak_set.empty(), "lipschitz env: empty peak set");
  require(num_changes == 0 || peak_set.size() >= 2,
          "lipschitz env: switching needs at least two peaks");

  std::vector<std::size_t> picks = sample_without_replacement(
      static_cast<std::size_t>(horizon - 1), static_cast<std::size_t>(num_changes), rng);
  std::vector<std::int64_t> rounds;
  for (std::size_t p : picks) rounds.push_back(static_cast<std::int64_t>(p) + 1);
  std::sort(rounds.begin(), rounds.end());

  std::vector<double> peaks;
  std::size_t current = rng.uniform_index(peak_set.size());
  peaks.push_back(peak_set[current]);
  for (std::int64_t i = 0; i < num_changes; ++i) {
    std::size_t next = rng.uniform_index(peak_set.size() - 1);
    if (next >= current) ++next;
    current = next;
    peaks.push_back(peak_set[current]);
  }
  return SwitchingLipschitzEnv(family, std::move(rounds), std::move(peaks), noise_sigma, horizon);
}

double SwitchingLipschitzEnv::peak_at(std::int64_t t) const {
  // Number of change rounds strictly before t.
  const auto it = std::lower_bound(change_rounds_.begin(), change_rounds_.end(), t);
  return peaks_[static_cast<std::size_t>(it - change_rounds_.begin())];
}

double SwitchingLipschitzEnv::eval(double x, std::int64_t t) const {
  require(x >= 0.0 && x <= 1.0, "lipschitz env: x outside [0,1]");
  return lipschitz_family_eval(family_, peak_at(t), x);
}

double SwitchingLipschitzEnv::optimal_mean(std::int64_t) const {
  return lipschitz_family_max(family_);
}

double SwitchingLipschitzEnv::draw_reward(double x, std::int64_t t, SeededRng& rng) const {
  return eval(x, t) + noise_sigma_ * rng.normal();
}

}  // namespace zoomtune
