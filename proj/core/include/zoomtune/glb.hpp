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

// (Generalized) linear contextual bandits with tunable hyperparameters.
//
// Every algorithm exposes its hyperparameters as HyperparamSpec entries, in a
// fixed order, with a tuning interval and a theoretical schedule. select()
// and update() both take the current hyperparameter vector in that order, so
// an outer tuner can change it every round.

#ifndef ZOOMTUNE_GLB_HPP_
#define ZOOMTUNE_GLB_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zoomtune/linalg.hpp"
#include "zoomtune/rng.hpp"

namespace zoomtune {

enum class Link { kIdentity, kLogistic };

Link parse_link(std::string_view name);
std::string_view to_string(Link link);

/// mu(z): z for the identity link, 1/(1+exp(-z)) for the logistic link.
double link_mean(Link link, double z);
/// mu'(z).
double link_derivative(Link link, double z);

enum class HyperparamKind { kExploration, kStepsize };

struct HyperparamSpec {
  std::string name;
  HyperparamKind kind = HyperparamKind::kExploration;
  double low = 0.1;
  double high = 5.0;
  /// Value prescribed by theory at round t. Need not lie inside [low, high].
  std::function<double(std::int64_t)> theoretical;
};

/// sigma * sqrt(d * ln((1 + t/lambda) / delta)) + S * sqrt(lambda).
double theoretical_alpha(double t, double sigma, int d, double lambda, double delta,
                         double S);

struct Observation {
  Vector x;
  double y = 0.0;
};

/// Thrown by glm_mle_newton when the iteration budget runs out.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Vector last_iterate)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)) {}
  const Vector& last_iterate() const { return last_iterate_; }

 private:
  Vector last_iterate_;
};

inline constexpr double kMleJitter = 1e-6;

/// Maximizes sum_i [y_i z_i - b(z_i)] - jitter/2 |theta|^2 (z_i = x_i^T theta)
/// by damped Newton. The returned point has gradient norm <= tol.
Vector glm_mle_newton(std::span<const Observation> data, Link link, double tol,
                      std::optional<Vector> start = std::nullopt, double jitter = kMleJitter,
                      int max_iterations = 100);

/// Gradient of the jittered log-likelihood above.
Vector glm_log_likelihood_gradient(std::span<const Observation> data, Link link,
                                   const Vector& theta, double jitter = kMleJitter);

/// Throws ContractViolation unless every arm has the given dimension and
/// Euclidean norm <= 1.
void validate_arms(std::span<const Vector> arms, int dim);

/// First index attaining the maximum.
std::size_t argmax_first(std::span<const double> scores);

/// Options shared by all algorithms. delta = 0 means 1/horizon.
struct GlbOptions {
  int dim = 1;
  double lambda = 1.0;
  Link link = Link::kIdentity;
  double sigma = 0.25;
  double delta = 0.0;
  double S = 1.0;
  std::int64_t horizon = 1000;
  double interval_low = 0.1;
  double interval_high = 5.0;
  double warmup_min_eigen = 0.1;  // UCB-GLM: lambda_min(sum x x^T) to end warm-up
  double glm_ridge = 0.0;         // UCB-GLM: > 0 adds glm_ridge * I to V and skips warm-up
  double mle_tol = 1e-6;
};

class GlbAlgorithm {
 public:
  virtual ~GlbAlgorithm() = default;

  virtual std::string_view name() const = 0;
  virtual int dim() const = 0;
  const std::vector<HyperparamSpec>& hyperparams() const { return specs_; }
  std::vector<double> theoretical_values(std::int64_t t) const;

  /// Index of the arm to pull. `hp` follows hyperparams() order.
  virtual std::size_t select(std::span<const Vector> arms, std::span<const double> hp,
                             SeededRng& rng) = 0;
  virtual void update(const Vector& x, double y, std::span<const double> hp) = 0;
  virtual std::int64_t count() const = 0;

  /// True while the algorithm cannot select yet and the caller must pull
  /// uniformly random arms.
  virtual bool needs_warmup() const { return false; }

 protected:
  std::vector<HyperparamSpec> specs_;
};

class LinUcb final : public GlbAlgorithm {
 public:
  explicit LinUcb(const GlbOptions& options);

  std::string_view name() const override { return "linucb"; }
  int dim() const override { return ridge_.dim(); }
  std::size_t select(std::span<const Vector> arms, std::span<const double> hp,
                     SeededRng& rng) override;
  void update(const Vector& x, double y, std::span<const double> hp) override;
  std::int64_t count() const override { return ridge_.count(); }

  std::size_t select(std::span<const Vector> arms, double alpha) const;
  /// x^T theta_hat + alpha * |x|_{V^-1}.
  double score(const Vector& x, double alpha) const;
  const RidgeState& ridge() const { return ridge_; }

 private:
  RidgeState ridge_;
};

/// Linear Thompson sampling: theta~ = theta_hat + alpha * N(0, V^-1).
class LinTs final : public GlbAlgorithm {
 public:
  explicit LinTs(const GlbOptions& options);

  std::string_view name() const override { return "lints"; }
  int dim() const override { return ridge_.dim(); }
  std::size_t select(std::span<const Vector> arms, std::span<const double> hp,
                     SeededRng& rng) override;
  void update(const Vector& x, double y, std::span<const double> hp) override;
  std::int64_t count() const override { return ridge_.count(); }

  const RidgeState& ridge() const { return ridge_; }

 private:
  RidgeState ridge_;
};

/// UCB-GLM: maximum-likelihood estimate plus alpha * |x|_{V^-1} with the
/// design matrix V = sum x x^T. Needs random warm-up pulls until lambda_min(V)
/// reaches GlbOptions::warmup_min_eigen. With glm_ridge > 0, V and the
/// likelihood both carry a glm_ridge ridge term and no warm-up is needed.
class UcbGlm final : public GlbAlgorithm {
 public:
  explicit UcbGlm(const GlbOptions& options);

  std::string_view name() const override { return "ucbglm"; }
  int dim() const override { return static_cast<int>(design_.rows()); }
  std::size_t select(std::span<const Vector> arms, std::span<const double> hp,
                     SeededRng& rng) override;
  void update(const Vector& x, double y, std::span<const double> hp) override;
  std::int64_t count() const override { return static_cast<std::int64_t>(data_.size()); }
  bool needs_warmup() const override;

  /// Refreshes (if stale) and returns the MLE.
  const Vector& theta_mle();
  Link link() const { return link_; }

 private:
  void refresh();

  Link link_;
  double tol_;
  double min_eigen_;
  double ridge_;
  Matrix design_;
  Matrix design_inv_;
  std::vector<Observation> data_;
  Vector theta_;
  bool stale_ = true;
  mutable bool warmed_up_ = false;
};

/// Laplace-approximation Thompson sampling with a diagonal Gaussian posterior
/// N(m, diag(q)^-1). After each observation the mode takes one
/// precision-scaled gradient step of size `stepsize` on the log-likelihood,
/// then the precision absorbs mu'(x^T m) x_i^2.
class LaplaceTs final : public GlbAlgorithm {
 public:
  explicit LaplaceTs(const GlbOptions& options);

  std::string_view name() const override { return "laplacets"; }
  int dim() const override { return static_cast<int>(mode_.size()); }
  std::size_t select(std::span<const Vector> arms, std::span<const double> hp,
                     SeededRng& rng) override;
  void update(const Vector& x, double y, std::span<const double> hp) override;
  std::int64_t count() const override { return count_; }

  const Vector& mode() const { return mode_; }
  const Vector& precision() const { return precision_; }

 private:
  Link link_;
  Vector mode_;
  Vector precision_;
  std::int64_t count_ = 0;
};

/// SGD Thompson sampling: one stochastic gradient step of size `stepsize` per
/// observation on theta_sgd; selection by x^T theta_sgd + alpha |x|_{V^-1} Z
/// with one standard normal Z per round.
class SgdTs final : public GlbAlgorithm {
 public:
  explicit SgdTs(const GlbOptions& options);

  std::string_view name() const override { return "sgdts"; }
  int dim() const override { return ridge_.dim(); }
  std::size_t select(std::span<const Vector> arms, std::span<const double> hp,
                     SeededRng& rng) override;
  void update(const Vector& x, double y, std::span<const double> hp) override;
  std::int64_t count() const override { return ridge_.count(); }

  const Vector& theta() const { return theta_; }

 private:
  Link link_;
  RidgeState ridge_;
  Vector theta_;
};

/// Factory by name: linucb, lints, ucbglm, laplacets, sgdts.
std::unique_ptr<GlbAlgorithm> make_algorithm(std::string_view name, const GlbOptions& options);

}  // namespace zoomtune

#endif  // ZOOMTUNE_GLB_HPP_
