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

#include "zoomtune/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <spdlog/spdlog.h>

#include "zoomtune/errors.hpp"

namespace zoomtune {

namespace {

std::atomic<std::int64_t> g_clamp_count{0};

std::string dims(Eigen::Index a, Eigen::Index b) {
  return std::to_string(a) + " vs " + std::to_string(b);
}

}  // namespace

RidgeState::RidgeState(int dim, double lambda)
    : lambda_(lambda),
      v_(Matrix::Identity(dim, dim) * lambda),
      v_inv_(Matrix::Identity(dim, dim) / lambda),
      b_(Vector::Zero(dim)) {
  require(dim >= 1, "RidgeState: dimension must be >= 1");
  require(lambda > 0.0, "RidgeState: lambda must be positive");
}

void RidgeState::rank_one_update(const Vector& x, double y) {
  require(x.size() == b_.size(), "rank_one_update: dimension mismatch " + dims(x.size(), b_.size()));
  v_.noalias() += x * x.transpose();
  b_.noalias() += y * x;
  ++count_;

  if (count_ % kReinvertEvery == 0) {
    reinvert();
    return;
  }
  // (V + x x^T)^{-1} = V^{-1} - V^{-1} x x^T V^{-1} / (1 + x^T V^{-1} x)
  const Vector vx = v_inv_ * x;
  const double denom = 1.0 + x.dot(vx);
  v_inv_.noalias() -= (vx * vx.transpose()) / denom;
  v_inv_ = 0.5 * (v_inv_ + v_inv_.transpose()).eval();
}

void RidgeState::reinvert() {
  Eigen::LLT<Matrix> llt(v_);
  v_inv_ = llt.solve(Matrix::Identity(v_.rows(), v_.cols()));
  v_inv_ = 0.5 * (v_inv_ + v_inv_.transpose()).eval();
}

double mahalanobis_norm(const Vector& x, const Matrix& v_inv) {
  require(x.size() == v_inv.rows() && v_inv.rows() == v_inv.cols(),
          "mahalanobis_norm: dimension mismatch " + dims(x.size(), v_inv.rows()));
  const double q = x.dot(v_inv * x);
  if (q < 0.0) {
    g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    spdlog::warn("mahalanobis_norm: negative quadratic form {} clamped to 0", q);
    return 0.0;
  }
  return std::sqrt(q);
}

std::int64_t mahalanobis_clamp_count() { return g_clamp_count.load(std::memory_order_relaxed); }

Vector sample_gaussian_vector(SeededRng& rng, const Vector& mean, const Matrix& covariance,
                              double scale) {
  require(covariance.rows() == mean.size() && covariance.cols() == mean.size(),
          "sample_gaussian_vector: dimension mismatch " + dims(covariance.rows(), mean.size()));
  Eigen::LLT<Matrix> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw ContractViolation("sample_gaussian_vector: covariance is not positive definite");
  }
  if (scale == 0.0) return mean;
  Vector z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  const Vector correlated = llt.matrixL() * z;
  return mean + scale * correlated;
}

double min_eigenvalue(const Matrix& v) {
  require(v.rows() == v.cols(), "min_eigenvalue: matrix is not square");
  const double tol = 1e-10 * std::max(1.0, v.cwiseAbs().maxCoeff());
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw ContractViolation("min_eigenvalue: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(v, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace zoomtune
