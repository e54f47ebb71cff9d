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

#ifndef ZOOMTUNE_LINALG_HPP_
#define ZOOMTUNE_LINALG_HPP_

#include <cstdint>

#include <Eigen/Core>

#include "zoomtune/rng.hpp"

namespace zoomtune {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Incremental ridge regression: V = lambda*I + sum x x^T, b = sum y x.
///
/// The inverse of V is carried along with rank-one (Sherman-Morrison)
/// updates, so each observation costs O(d^2). Every `kReinvertEvery`
/// updates the inverse is recomputed from V to cap accumulated roundoff.
class RidgeState {
 public:
  static constexpr std::int64_t kReinvertEvery = 512;

  RidgeState(int dim, double lambda);

  int dim() const { return static_cast<int>(b_.size()); }
  double lambda() const { return lambda_; }
  std::int64_t count() const { return count_; }

  const Matrix& V() const { return v_; }
  const Matrix& V_inv() const { return v_inv_; }
  const Vector& b() const { return b_; }

  /// V_inv * b.
  Vector theta() const { return v_inv_ * b_; }

  /// Absorbs one observation. Throws ContractViolation on dimension mismatch.
  void rank_one_update(const Vector& x, double y);

 private:
  void reinvert();

  double lambda_;
  Matrix v_;
  Matrix v_inv_;
  Vector b_;
  std::int64_t count_ = 0;
};

/// sqrt(x^T V_inv x). A negative quadratic form (roundoff on a nearly
/// singular V_inv) is clamped to zero and reported through the log.
double mahalanobis_norm(const Vector& x, const Matrix& v_inv);

/// mean + scale * L z where covariance = L L^T and z is i.i.d. N(0, 1).
/// Throws ContractViolation when covariance is not positive definite.
Vector sample_gaussian_vector(SeededRng& rng, const Vector& mean, const Matrix& covariance,
                              double scale);

/// Smallest eigenvalue of a symmetric matrix. Throws on asymmetric input.
double min_eigenvalue(const Matrix& v);

/// Number of times mahalanobis_norm clamped a negative form, process-wide.
std::int64_t mahalanobis_clamp_count();

}  // namespace zoomtune

#endif  // ZOOMTUNE_LINALG_HPP_
