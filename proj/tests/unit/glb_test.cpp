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
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "unit/oracles.hpp"
#include "zoomtune/errors.hpp"
#include "zoomtune/rng.hpp"

namespace zoomtune {
namespace {

const std::vector<std::string> kAlgorithms = {"linucb", "lints", "ucbglm", "laplacets", "sgdts"};

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

GlbOptions options(int dim, Link link = Link::kIdentity) {
  GlbOptions o;
  o.dim = dim;
  o.link = link;
  o.horizon = 1000;
  o.glm_ridge = 1.0;  // lets UCB-GLM select from the start in generic tests
  return o;
}

std::vector<Vector> random_arms(SeededRng& rng, int dim, int k) {
  std::vector<Vector> arms;
  for (int a = 0; a < k; ++a) {
    Vector x(dim);
    for (int i = 0; i < dim; ++i) x[i] = rng.uniform(-1.0, 1.0) / std::sqrt(double(dim));
    arms.push_back(x);
  }
  return arms;
}

// Feeds `n` linear observations with a fixed parameter to `algo`.
void train(GlbAlgorithm& algo, SeededRng& rng, int n) {
  const int d = algo.dim();
  Vector theta = Vector::LinSpaced(d, -0.5, 0.8);
  const std::vector<double> hp = algo.theoretical_values(1);
  for (int k = 0; k < n; ++k) {
    const Vector x = random_arms(rng, d, 1)[0];
    algo.update(x, x.dot(theta) + 0.1 * rng.normal(), hp);
  }
}

TEST(LinkTest, ParseAndEvaluate) {
  EXPECT_EQ(parse_link("identity"), Link::kIdentity);
  EXPECT_EQ(parse_link("logistic"), Link::kLogistic);
  EXPECT_THROW(parse_link("probit"), InputError);
  EXPECT_DOUBLE_EQ(link_mean(Link::kIdentity, 0.3), 0.3);
  EXPECT_NEAR(link_mean(Link::kLogistic, std::log(3.0)), 0.75, 1e-15);
  EXPECT_NEAR(link_mean(Link::kLogistic, -800.0), 0.0, 1e-300);
  EXPECT_NEAR(link_derivative(Link::kLogistic, 0.0), 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(link_derivative(Link::kIdentity, 5.0), 1.0);
}

TEST(TheoreticalAlphaTest, Examples) {
  for (double t : {1.0, 10.0, 1e4}) {
    EXPECT_DOUBLE_EQ(theoretical_alpha(t, 0.0, 3, 1.0, 0.01, 1.0), 1.0);
  }
  EXPECT_NEAR(theoretical_alpha(std::numbers::e - 1.0, 1.0, 1, 1.0, 1.0 / std::numbers::e, 1.0),
              std::sqrt(2.0) + 1.0, 1e-12);
  double prev = 0.0;
  for (double t = 1; t < 1e5; t *= 1.7) {
    const double a = theoretical_alpha(t, 0.25, 5, 1.0, 1e-3, 1.0);
    EXPECT_GE(a, prev);
    prev = a;
  }
  EXPECT_THROW(theoretical_alpha(1.0, 1.0, 1, 1.0, 1.0, 1.0), ContractViolation);
}

TEST(HyperparamSpecTest, NamesKindsAndDefaults) {
  const GlbOptions o = options(3);
  auto sgd = make_algorithm("sgdts", o);
  ASSERT_EQ(sgd->hyperparams().size(), 2u);
  EXPECT_EQ(sgd->hyperparams()[0].kind, HyperparamKind::kExploration);
  EXPECT_EQ(sgd->hyperparams()[1].kind, HyperparamKind::kStepsize);
  EXPECT_EQ(sgd->theoretical_values(50)[1], 1.0);
  auto lap = make_algorithm("laplacets", o);
  ASSERT_EQ(lap->hyperparams().size(), 1u);
  EXPECT_EQ(lap->theoretical_values(7)[0], 1.0);
  auto ucb = make_algorithm("linucb", o);
  EXPECT_DOUBLE_EQ(ucb->hyperparams()[0].low, 0.1);
  EXPECT_DOUBLE_EQ(ucb->hyperparams()[0].high, 5.0);
  // delta = 0 in the options means 1/T.
  EXPECT_DOUBLE_EQ(ucb->theoretical_values(200)[0],
                   theoretical_alpha(200.0, o.sigma, 3, o.lambda, 1.0 / 1000.0, o.S));
  EXPECT_THROW(make_algorithm("gloc", o), InputError);
}

TEST(LinUcbTest, HandEvaluatedScores) {
  LinUcb algo(options(1));
  // One observation (x = 1, y = 1) on top of lambda = 1: theta_hat = 0.5, V^-1 = 0.5.
  algo.update(vec({1.0}), 1.0, std::vector<double>{0.1});
  const std::vector<Vector> arms = {vec({1.0}), vec({-1.0})};
  EXPECT_NEAR(algo.score(arms[0], 0.1), 0.5 + 0.1 * std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(algo.score(arms[1], 0.1), -0.5 + 0.1 * std::sqrt(0.5), 1e-15);
  EXPECT_EQ(algo.select(arms, 0.1), 0u);
}

TEST(LinUcbTest, ScoreDecomposition) {
  LinUcb algo(options(4));
  SeededRng rng(1);
  train(algo, rng, 30);
  const Vector theta = algo.ridge().theta();
  for (const Vector& x : random_arms(rng, 4, 20)) {
    const double bonus = algo.score(x, 1.7) - x.dot(theta);
    EXPECT_NEAR(bonus, 1.7 * std::sqrt(x.dot(algo.ridge().V_inv() * x)), 1e-10);
  }
}

TEST(LinUcbTest, TiesGoToLowestIndex) {
  LinUcb algo(options(2));
  const std::vector<Vector> arms = {vec({0.1, 0.2}), vec({0.3, 0.3}), vec({0.3, 0.3})};
  EXPECT_EQ(algo.select(arms, 1.0), 1u);
}

TEST(GlbAlgorithmTest, ZeroExplorationIsGreedyForEveryAlgorithm) {
  for (const std::string& name : kAlgorithms) {
    SeededRng rng(3);
    auto algo = make_algorithm(name, options(3));
    train(*algo, rng, 200);
    std::vector<double> hp = algo->theoretical_values(200);
    for (std::size_t i = 0; i < hp.size(); ++i) {
      if (algo->hyperparams()[i].kind == HyperparamKind::kExploration) hp[i] = 0.0;
    }
    // Point estimate, computed independently per algorithm.
    Vector est;
    if (name == "linucb") est = dynamic_cast<LinUcb&>(*algo).ridge().theta();
    if (name == "lints") est = dynamic_cast<LinTs&>(*algo).ridge().theta();
    if (name == "ucbglm") est = dynamic_cast<UcbGlm&>(*algo).theta_mle();
    if (name == "sgdts") est = dynamic_cast<SgdTs&>(*algo).theta();
    if (name == "laplacets") continue;  // exploration comes from the precision, covered below
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<Vector> arms = random_arms(rng, 3, 8);
      std::vector<double> greedy(arms.size());
      for (std::size_t a = 0; a < arms.size(); ++a) greedy[a] = arms[a].dot(est);
      EXPECT_EQ(algo->select(arms, hp, rng), argmax_first(greedy)) << name;
    }
  }
}

TEST(GlbAlgorithmTest, SelectIsDeterministicUnderSeed) {
  for (const std::string& name : kAlgorithms) {
    SeededRng data(5);
    auto a = make_algorithm(name, options(3));
    auto b = make_algorithm(name, options(3));
    train(*a, data, 50);
    SeededRng data2(5);
    train(*b, data2, 50);
    SeededRng arm_rng(6);
    const std::vector<Vector> arms = random_arms(arm_rng, 3, 10);
    const std::vector<double> hp = a->theoretical_values(50);
    for (int k = 0; k < 20; ++k) {
      SeededRng r1(100 + k), r2(100 + k);
      EXPECT_EQ(a->select(arms, hp, r1), b->select(arms, hp, r2)) << name;
    }
  }
}

TEST(GlbAlgorithmTest, CountsUpdatesAndRejectsBadInput) {
  for (const std::string& name : kAlgorithms) {
    SeededRng rng(8);
    auto algo = make_algorithm(name, options(3));
    train(*algo, rng, 7);
    EXPECT_EQ(algo->count(), 7) << name;
    const std::vector<double> hp = algo->theoretical_values(7);
    EXPECT_THROW(algo->update(Vector::Zero(2), 0.0, hp), ContractViolation) << name;
    const std::vector<Vector> too_long = {vec({1.0, 0.5, 0.0})};
    EXPECT_THROW(algo->select(too_long, hp, rng), ContractViolation) << name;
    const std::vector<Vector> none;
    EXPECT_THROW(algo->select(none, hp, rng), ContractViolation) << name;
    const std::vector<double> wrong(hp.size() + 1, 1.0);
    EXPECT_THROW(algo->select(random_arms(rng, 3, 2), wrong, rng), ContractViolation) << name;
  }
}

TEST(LinTsTest, ZeroAlphaAndMonteCarloPreference) {
  LinTs algo(options(2));
  SeededRng rng(2);
  for (int k = 0; k < 400; ++k) algo.update(vec({0.7, 0.0}), 0.7, std::vector<double>{1.0});
  const std::vector<Vector> arms = {vec({1.0, 0.0}), vec({0.0, 1.0})};
  const Vector th = algo.ridge().theta();
  EXPECT_EQ(algo.select(arms, std::vector<double>{0.0}, rng), th[0] >= th[1] ? 0u : 1u);
  int wins = 0;
  for (int i = 0; i < 10000; ++i) {
    wins += algo.select(arms, std::vector<double>{0.5}, rng) == 0 ? 1 : 0;
  }
  // theta_1 - theta_2 ~ N(th0 - th1, 0.25 (v11 + v22)).
  const Matrix& vi = algo.ridge().V_inv();
  const double z = (th[0] - th[1]) / (0.5 * std::sqrt(vi(0, 0) + vi(1, 1)));
  const double oracle = 0.5 * std::erfc(-z / std::sqrt(2.0));
  EXPECT_GT(wins / 10000.0, 0.9);
  EXPECT_NEAR(wins / 10000.0, oracle, 0.02);
}

TEST(GlmMleTest, IdentityLinkMatchesRidgeSolve) {
  SeededRng rng(4);
  std::vector<Observation> data;
  testing::Dense v(3, std::vector<double>(3, 0.0));
  std::vector<double> b(3, 0.0);
  for (int i = 0; i < 3; ++i) v[i][i] = kMleJitter;
  for (int k = 0; k < 40; ++k) {
    const Vector x = random_arms(rng, 3, 1)[0];
    const double y = rng.normal();
    data.push_back({x, y});
    for (int i = 0; i < 3; ++i) {
      b[i] += x[i] * y;
      for (int j = 0; j < 3; ++j) v[i][j] += x[i] * x[j];
    }
  }
  const std::vector<double> oracle = testing::mat_vec(testing::gauss_jordan_inverse(v), b);
  const Vector got = glm_mle_newton(data, Link::kIdentity, 1e-10);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(got[i], oracle[i], 1e-6);
}

TEST(GlmMleTest, LogisticBalancedDataGivesZero) {
  std::vector<Observation> data;
  for (int k = 0; k < 5; ++k) data.push_back({vec({1.0}), 1.0});
  for (int k = 0; k < 5; ++k) data.push_back({vec({1.0}), 0.0});
  EXPECT_NEAR(glm_mle_newton(data, Link::kLogistic, 1e-10)[0], 0.0, 1e-9);
}

TEST(GlmMleTest, LogisticMatchesBisectionOracle) {
  std::vector<Observation> data;
  for (int k = 0; k < 3; ++k) data.push_back({vec({1.0}), 1.0});
  data.push_back({vec({1.0}), 0.0});
  const double tol = 1e-10;
  const Vector theta = glm_mle_newton(data, Link::kLogistic, tol);
  // Score equation with the jitter: 3 - 4 sigmoid(t) - jitter t = 0.
  const double oracle = testing::bisect(
      [](double t) { return 3.0 - 4.0 / (1.0 + std::exp(-t)) - kMleJitter * t; }, -10.0, 10.0);
  EXPECT_NEAR(theta[0], oracle, 1e-8);
  EXPECT_NEAR(theta[0], std::log(3.0), 1e-4);
  EXPECT_LE(glm_log_likelihood_gradient(data, Link::kLogistic, theta).norm(), tol);
}

TEST(GlmMleTest, NonConvergenceReportsLastIterate) {
  // Separable data: the unjittered optimum is at infinity; a tiny jitter and
  // two iterations cannot reach the tolerance.
  std::vector<Observation> data;
  for (int k = 0; k < 10; ++k) data.push_back({vec({1.0}), 1.0});
  try {
    glm_mle_newton(data, Link::kLogistic, 1e-12, std::nullopt, 1e-9, 2);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.last_iterate().size(), 1);
    EXPECT_TRUE(std::isfinite(e.last_iterate()[0]));
  }
}

TEST(UcbGlmTest, WarmUpIsRequiredWithoutRidge) {
  GlbOptions o = options(2);
  o.glm_ridge = 0.0;
  UcbGlm algo(o);
  EXPECT_TRUE(algo.needs_warmup());
  SeededRng rng(1);
  const std::vector<Vector> arms = {vec({0.5, 0.0}), vec({0.0, 0.5})};
  EXPECT_THROW(algo.select(arms, std::vector<double>{1.0}, rng), ContractViolation);
  algo.update(vec({1.0, 0.0}), 1.0, std::vector<double>{1.0});
  EXPECT_TRUE(algo.needs_warmup());
  algo.update(vec({0.0, 1.0}), 0.0, std::vector<double>{1.0});
  EXPECT_FALSE(algo.needs_warmup());
  EXPECT_NO_THROW(algo.select(arms, std::vector<double>{1.0}, rng));
}

TEST(UcbGlmTest, LogisticMleGradientAfterRefresh) {
  GlbOptions o = options(3, Link::kLogistic);
  o.glm_ridge = 0.0;
  UcbGlm algo(o);
  SeededRng rng(12);
  const Vector theta = vec({0.8, -0.4, 0.3});
  std::vector<Observation> log;
  for (int k = 0; k < 300; ++k) {
    const Vector x = random_arms(rng, 3, 1)[0];
    const double y = rng.bernoulli(link_mean(Link::kLogistic, x.dot(theta))) ? 1.0 : 0.0;
    algo.update(x, y, std::vector<double>{1.0});
    log.push_back({x, y});
  }
  const Vector mle = algo.theta_mle();
  EXPECT_LE(glm_log_likelihood_gradient(log, Link::kLogistic, mle).norm(), 1e-6);
}

TEST(UcbGlmTest, SymmetricLogisticDataScoresByBonusOnly) {
  GlbOptions o = options(1, Link::kLogistic);
  o.glm_ridge = 0.0;
  UcbGlm algo(o);
  for (int k = 0; k < 5; ++k) algo.update(vec({1.0}), 1.0, std::vector<double>{1.0});
  for (int k = 0; k < 5; ++k) algo.update(vec({1.0}), 0.0, std::vector<double>{1.0});
  EXPECT_NEAR(algo.theta_mle()[0], 0.0, 1e-9);
  SeededRng rng(1);
  // Scores are alpha |x|_{V^-1}, so the longer arm wins regardless of sign.
  const std::vector<Vector> arms = {vec({0.3}), vec({-0.9})};
  EXPECT_EQ(algo.select(arms, std::vector<double>{1.0}, rng), 1u);
}

TEST(UcbGlmTest, IdentityLinkWithRidgeMatchesLinUcb) {
  GlbOptions o = options(3);
  o.glm_ridge = o.lambda;
  UcbGlm glm(o);
  LinUcb lin(o);
  SeededRng rng(21), rng2(21);
  train(glm, rng, 60);
  train(lin, rng2, 60);
  SeededRng pick(1);
  for (int k = 0; k < 30; ++k) {
    const std::vector<Vector> arms = random_arms(pick, 3, 10);
    EXPECT_EQ(glm.select(arms, std::vector<double>{0.8}, pick), lin.select(arms, 0.8));
  }
}

TEST(LaplaceTsTest, PriorAndUpdateRule) {
  GlbOptions o = options(2, Link::kLogistic);
  o.lambda = 2.0;
  LaplaceTs algo(o);
  EXPECT_EQ(algo.mode(), Vector::Zero(2));
  EXPECT_EQ(algo.precision(), Vector::Constant(2, 2.0));
  const Vector x = vec({0.6, 0.8});
  algo.update(x, 1.0, std::vector<double>{0.5});
  // m = 0 + 0.5 * (1 - 0.5) x / 2; q = 2 + mu'(x'm) x^2.
  const Vector m = 0.5 * 0.5 * x / 2.0;
  EXPECT_NEAR((algo.mode() - m).norm(), 0.0, 1e-15);
  const double deriv = link_derivative(Link::kLogistic, x.dot(m));
  EXPECT_NEAR(algo.precision()[0], 2.0 + deriv * 0.36, 1e-15);
  EXPECT_NEAR(algo.precision()[1], 2.0 + deriv * 0.64, 1e-15);
}

TEST(LaplaceTsTest, LargePrecisionIsGreedyOnMode) {
  GlbOptions o = options(2);
  o.lambda = 1e12;
  LaplaceTs algo(o);
  // One step moves the mode by stepsize * y * x / q; use a huge stepsize.
  algo.update(vec({1.0, 0.0}), 1.0, std::vector<double>{1e12});
  ASSERT_NEAR(algo.mode()[0], 1.0, 1e-9);
  SeededRng rng(3);
  const std::vector<Vector> arms = {vec({0.0, 0.9}), vec({0.9, 0.0})};
  for (int k = 0; k < 50; ++k) EXPECT_EQ(algo.select(arms, std::vector<double>{1.0}, rng), 1u);
}

TEST(LaplaceTsTest, SymmetricPriorPicksBothArms) {
  GlbOptions o = options(2);
  std::vector<int> hits(2, 0);
  const std::vector<Vector> arms = {vec({0.5, 0.0}), vec({0.0, 0.5})};
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    LaplaceTs algo(o);
    SeededRng rng(seed);
    ++hits[algo.select(arms, std::vector<double>{1.0}, rng)];
  }
  EXPECT_NEAR(hits[0] / 400.0, 0.5, 0.08);
}

TEST(SgdTsTest, SingleGradientStep) {
  SgdTs algo(options(1));
  algo.update(vec({1.0}), 1.0, std::vector<double>{1.0, 0.5});
  EXPECT_DOUBLE_EQ(algo.theta()[0], 0.5);
}

TEST(SgdTsTest, ZeroStepsizeFreezesIterate) {
  SgdTs algo(options(3));
  SeededRng rng(1);
  for (int k = 0; k < 20; ++k) {
    algo.update(random_arms(rng, 3, 1)[0], rng.normal(), std::vector<double>{1.0, 0.0});
  }
  EXPECT_EQ(algo.theta(), Vector::Zero(3));
  EXPECT_EQ(algo.count(), 20);
}

TEST(ValidateArmsTest, RejectsLongArms) {
  const std::vector<Vector> ok = {vec({0.6, 0.8})};
  EXPECT_NO_THROW(validate_arms(ok, 2));
  const std::vector<Vector> bad = {vec({0.6, 0.81})};
  EXPECT_THROW(validate_arms(bad, 2), ContractViolation);
}

}  // namespace
}  // namespace zoomtune
