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

#include "zoomtune/glb.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <spdlog/spdlog.h>

#include "zoomtune/errors.hpp"

namespace zoomtune {
namespace {

constexpr double kNormSlack = 1e-12;

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double cumulant(Link link, double z) {
  return link == Link::kIdentity ? 0.5 * z * z : softplus(z);
}

double log_likelihood(std::span<const Observation> data, Link link, const Vector& theta,
                      double jitter) {
  double total = -0.5 * jitter * theta.squaredNorm();
  for (const Observation& o : data) {
    const double z = o.x.dot(theta);
    total += o.y * z - cumulant(link, z);
  }
  return total;
}

void require_hp(std::span<const double> hp, std::size_t n, std::string_view who) {
  require(hp.size() == n, std::string(who) + ": expected " + std::to_string(n) +
                              " hyperparameter value(s), got " + std::to_string(hp.size()));
}

void require_dim(const Vector& x, int dim, std::string_view who) {
  require(x.size() == dim, std::string(who) + ": vector dimension " + std::to_string(x.size()) +
                               " does not match " + std::to_string(dim));
}

HyperparamSpec exploration_spec(const GlbOptions& o, std::string name) {
  const double delta = o.delta > 0.0 ? o.delta : 1.0 / static_cast<double>(o.horizon);
  require(delta < 1.0, "GlbOptions: delta must lie in (0, 1)");
  HyperparamSpec spec;
  spec.name = std::move(name);
  spec.kind = HyperparamKind::kExploration;
  spec.low = o.interval_low;
  spec.high = o.interval_high;
  spec.theoretical = [sigma = o.sigma, d = o.dim, lambda = o.lambda, delta,
                      s = o.S](std::int64_t t) {
    return theoretical_alpha(static_cast<double>(t), sigma, d, lambda, delta, s);
  };
  return spec;
}

HyperparamSpec stepsize_spec(const GlbOptions& o) {
  HyperparamSpec spec;
  spec.name = "stepsize";
  spec.kind = HyperparamKind::kStepsize;
  spec.low = o.interval_low;
  spec.high = o.interval_high;
  spec.theoretical = [](std::int64_t) { return 1.0; };
  return spec;
}

void check_options(const GlbOptions& o) {
  require(o.dim >= 1, "GlbOptions: dim must be >= 1");
  require(o.lambda > 0.0, "GlbOptions: lambda must be > 0");
  require(o.horizon >= 2, "GlbOptions: horizon must be >= 2");
  require(o.interval_low <= o.interval_high, "GlbOptions: empty tuning interval");
}

}  // namespace

Link parse_link(std::string_view name) {
  if (name == "identity" || name == "linear") return Link::kIdentity;
  if (name == "logistic") return Link::kLogistic;
  throw InputError("unknown link '" + std::string(name) + "' (expected identity or logistic)");
}

std::string_view to_string(Link link) {
  return link == Link::kIdentity ? "identity" : "logistic";
}

double link_mean(Link link, double z) {
  if (link == Link::kIdentity) return z;
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double link_derivative(Link link, double z) {
  if (link == Link::kIdentity) return 1.0;
  const double m = link_mean(link, z);
  return m * (1.0 - m);
}

double theoretical_alpha(double t, double sigma, int d, double lambda, double delta, double S) {
  require(delta > 0.0 && delta < 1.0, "theoretical_alpha: delta must lie in (0, 1)");
  require(lambda > 0.0, "theoretical_alpha: lambda must be > 0");
  require(t >= 0.0 && d >= 1, "theoretical_alpha: need t >= 0 and d >= 1");
  return sigma * std::sqrt(d * std::log((1.0 + t / lambda) / delta)) + S * std::sqrt(lambda);
}

Vector glm_log_likelihood_gradient(std::span<const Observation> data, Link link,
                                   const Vector& theta, double jitter) {
  Vector g = -jitter * theta;
  for (const Observation& o : data) g += (o.y - link_mean(link, o.x.dot(theta))) * o.x;
  return g;
}

Vector glm_mle_newton(std::span<const Observation> data, Link link, double tol,
                      std::optional<Vector> start, double jitter, int max_iterations) {
  require(tol > 0.0, "glm_mle_newton: tol must be > 0");
  require(jitter > 0.0, "glm_mle_newton: jitter must be > 0");
  const Eigen::Index d = data.empty() ? (start ? start->size() : 0) : data.front().x.size();
  require(d >= 1, "glm_mle_newton: cannot infer the dimension");
  for (const Observation& o : data) require_dim(o.x, static_cast<int>(d), "glm_mle_newton");

  Vector theta = start ? *start : Vector::Zero(d);
  require_dim(theta, static_cast<int>(d), "glm_mle_newton");

  for (int iter = 0; iter < max_iterations; ++iter) {
    const Vector g = glm_log_likelihood_gradient(data, link, theta, jitter);
    if (g.norm() <= tol) return theta;

    Matrix neg_hessian = jitter * Matrix::Identity(d, d);
    for (const Observation& o : data) {
      neg_hessian.selfadjointView<Eigen::Lower>().rankUpdate(
          o.x, link_derivative(link, o.x.dot(theta)));
    }
    const Vector step = neg_hessian.selfadjointView<Eigen::Lower>().llt().solve(g);

    // Backtracking on the concave objective.
    const double base = log_likelihood(data, link, theta, jitter);
    const double slope = g.dot(step);
    double t = 1.0;
    Vector next = theta + step;
    for (int k = 0; k < 50; ++k) {
      if (log_likelihood(data, link, next, jitter) >= base + 1e-4 * t * slope) break;
      t *= 0.5;
      next = theta + t * step;
    }
    theta = next;
  }
  if (glm_log_likelihood_gradient(data, link, theta, jitter).norm() <= tol) return theta;
  throw ConvergenceError(
      "glm_mle_newton: no convergence after " + std::to_string(max_iterations) + " iterations",
      theta);
}

void validate_arms(std::span<const Vector> arms, int dim) {
  require(!arms.empty(), "empty arm set");
  for (std::size_t i = 0; i < arms.size(); ++i) {
    require(arms[i].size() == dim, "arm " + std::to_string(i) + " has dimension " +
                                       std::to_string(arms[i].size()) + ", expected " +
                                       std::to_string(dim));
    require(arms[i].norm() <= 1.0 + kNormSlack,
            "arm " + std::to_string(i) + " has norm > 1");
  }
}

std::size_t argmax_first(std::span<const double> scores) {
  require(!scores.empty(), "argmax_first: empty score list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::vector<double> GlbAlgorithm::theoretical_values(std::int64_t t) const {
  std::vector<double> values;
  values.reserve(specs_.size());
  for (const HyperparamSpec& s : specs_) values.push_back(s.theoretical(t));
  return values;
}

// LinUCB ---------------------------------------------------------------------

LinUcb::LinUcb(const GlbOptions& options)
    : ridge_((check_options(options), options.dim), options.lambda) {
  specs_.push_back(exploration_spec(options, "alpha"));
}

double LinUcb::score(const Vector& x, double alpha) const {
  return x.dot(ridge_.theta()) + alpha * mahalanobis_norm(x, ridge_.V_inv());
}

std::size_t LinUcb::select(std::span<const Vector> arms, double alpha) const {
  require(alpha >= 0.0, "linucb: alpha must be >= 0");
  validate_arms(arms, dim());
  const Vector theta = ridge_.theta();
  std::vector<double> scores(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) {
    scores[i] = arms[i].dot(theta) + alpha * mahalanobis_norm(arms[i], ridge_.V_inv());
  }
  return argmax_first(scores);
}

std::size_t LinUcb::select(std::span<const Vector> arms, std::span<const double> hp,
                           SeededRng&) {
  require_hp(hp, 1, "linucb");
  return select(arms, hp[0]);
}

void LinUcb::update(const Vector& x, double y, std::span<const double>) {
  ridge_.rank_one_update(x, y);
}

// LinTS ----------------------------------------------------------------------

LinTs::LinTs(const GlbOptions& options)
    : ridge_((check_options(options), options.dim), options.lambda) {
  specs_.push_back(exploration_spec(options, "alpha"));
}

std::size_t LinTs::select(std::span<const Vector> arms, std::span<const double> hp,
                          SeededRng& rng) {
  require_hp(hp, 1, "lints");
  require(hp[0] >= 0.0, "lints: alpha must be >= 0");
  validate_arms(arms, dim());
  const Vector sample = sample_gaussian_vector(rng, ridge_.theta(), ridge_.V_inv(), hp[0]);
  std::vector<double> scores(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) scores[i] = arms[i].dot(sample);
  return argmax_first(scores);
}

void LinTs::update(const Vector& x, double y, std::span<const double>) {
  ridge_.rank_one_update(x, y);
}

// UCB-GLM --------------------------------------------------------------------

UcbGlm::UcbGlm(const GlbOptions& options)
    : link_(options.link),
      tol_(options.mle_tol),
      min_eigen_(options.warmup_min_eigen),
      ridge_(options.glm_ridge) {
  check_options(options);
  require(ridge_ >= 0.0, "ucbglm: glm_ridge must be >= 0");
  design_ = ridge_ * Matrix::Identity(options.dim, options.dim);
  design_inv_ = Matrix::Zero(options.dim, options.dim);
  theta_ = Vector::Zero(options.dim);
  specs_.push_back(exploration_spec(options, "alpha"));
}

bool UcbGlm::needs_warmup() const {
  if (ridge_ > 0.0 || warmed_up_) return false;
  if (static_cast<int>(data_.size()) < dim()) return true;
  // lambda_min of a growing sum of PSD terms never decreases, so once is enough.
  warmed_up_ = min_eigenvalue(design_) >= min_eigen_;
  return !warmed_up_;
}

void UcbGlm::refresh() {
  if (!stale_) return;
  const double jitter = ridge_ > 0.0 ? ridge_ : kMleJitter;
  try {
    theta_ = glm_mle_newton(data_, link_, tol_, theta_, jitter);
  } catch (const ConvergenceError& e) {
    spdlog::warn("ucbglm: {}; keeping the last iterate", e.what());
    theta_ = e.last_iterate();
  }
  Eigen::LLT<Matrix> llt(design_);  // design_ is kept fully symmetric
  require(llt.info() == Eigen::Success,
          "ucbglm: design matrix is singular; run warm-up rounds first");
  design_inv_ = llt.solve(Matrix::Identity(dim(), dim()));
  stale_ = false;
}

const Vector& UcbGlm::theta_mle() {
  refresh();
  return theta_;
}

std::size_t UcbGlm::select(std::span<const Vector> arms, std::span<const double> hp,
                           SeededRng&) {
  require_hp(hp, 1, "ucbglm");
  require(hp[0] >= 0.0, "ucbglm: alpha must be >= 0");
  validate_arms(arms, dim());
  require(!needs_warmup(),
          "ucbglm: design matrix is singular or ill-conditioned; run warm-up rounds first");
  refresh();
  std::vector<double> scores(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) {
    scores[i] = arms[i].dot(theta_) + hp[0] * mahalanobis_norm(arms[i], design_inv_);
  }
  return argmax_first(scores);
}

void UcbGlm::update(const Vector& x, double y, std::span<const double>) {
  require_dim(x, dim(), "ucbglm update");
  design_.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0);
  design_ = Matrix(design_.selfadjointView<Eigen::Lower>());
  data_.push_back({x, y});
  stale_ = true;
}

// Laplace-TS -----------------------------------------------------------------

LaplaceTs::LaplaceTs(const GlbOptions& options) : link_(options.link) {
  check_options(options);
  mode_ = Vector::Zero(options.dim);
  precision_ = Vector::Constant(options.dim, options.lambda);
  specs_.push_back(stepsize_spec(options));
}

std::size_t LaplaceTs::select(std::span<const Vector> arms, std::span<const double> hp,
                              SeededRng& rng) {
  require_hp(hp, 1, "laplacets");
  validate_arms(arms, dim());
  Vector sample(dim());
  for (int i = 0; i < dim(); ++i) sample[i] = mode_[i] + rng.normal() / std::sqrt(precision_[i]);
  std::vector<double> scores(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) scores[i] = arms[i].dot(sample);
  return argmax_first(scores);
}

void LaplaceTs::update(const Vector& x, double y, std::span<const double> hp) {
  require_hp(hp, 1, "laplacets update");
  require(hp[0] >= 0.0, "laplacets: stepsize must be >= 0");
  require_dim(x, dim(), "laplacets update");
  const Vector grad = (y - link_mean(link_, x.dot(mode_))) * x;
  mode_ += hp[0] * grad.cwiseQuotient(precision_);
  precision_ += link_derivative(link_, x.dot(mode_)) * x.cwiseProduct(x);
  ++count_;
}

// SGD-TS ---------------------------------------------------------------------

SgdTs::SgdTs(const GlbOptions& options)
    : link_(options.link), ridge_((check_options(options), options.dim), options.lambda) {
  theta_ = Vector::Zero(options.dim);
  specs_.push_back(exploration_spec(options, "alpha"));
  specs_.push_back(stepsize_spec(options));
}

std::size_t SgdTs::select(std::span<const Vector> arms, std::span<const double> hp,
                          SeededRng& rng) {
  require_hp(hp, 2, "sgdts");
  require(hp[0] >= 0.0, "sgdts: alpha must be >= 0");
  validate_arms(arms, dim());
  const double z = rng.normal();
  std::vector<double> scores(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) {
    scores[i] = arms[i].dot(theta_) + hp[0] * mahalanobis_norm(arms[i], ridge_.V_inv()) * z;
  }
  return argmax_first(scores);
}

void SgdTs::update(const Vector& x, double y, std::span<const double> hp) {
  require_hp(hp, 2, "sgdts update");
  require(hp[1] >= 0.0, "sgdts: stepsize must be >= 0");
  require_dim(x, dim(), "sgdts update");
  theta_ += hp[1] * (y - link_mean(link_, x.dot(theta_))) * x;
  ridge_.rank_one_update(x, y);
}

std::unique_ptr<GlbAlgorithm> make_algorithm(std::string_view name, const GlbOptions& options) {
  if (name == "linucb") return std::make_unique<LinUcb>(options);
  if (name == "lints") return std::make_unique<LinTs>(options);
  if (name == "ucbglm") return std::make_unique<UcbGlm>(options);
  if (name == "laplacets") return std::make_unique<LaplaceTs>(options);
  if (name == "sgdts") return std::make_unique<SgdTs>(options);
  throw InputError("unknown algorithm '" + std::string(name) +
                   "' (expected linucb, lints, ucbglm, laplacets or sgdts)");
}

}  // namespace zoomtune
