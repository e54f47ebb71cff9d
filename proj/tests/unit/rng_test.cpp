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

#include "zoomtune/rng.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"

namespace zoomtune {
namespace {

TEST(SeededRngTest, SameSeedSameSequence) {
  SeededRng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a.next_u64(), b.next_u64());
    const double x = a.normal();
    const double y = b.normal();
    ASSERT_EQ(std::memcmp(&x, &y, sizeof x), 0);
  }
}

TEST(SeededRngTest, NormalConsumesTwoWords) {
  SeededRng a(3), b(3);
  a.normal();
  b.next_u64();
  b.next_u64();
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(SeededRngTest, UniformRanges) {
  SeededRng rng(8);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform_open_zero();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
    ASSERT_LT(rng.uniform_index(7), 7u);
  }
}

TEST(SeededRngTest, UniformIndexIsRoughlyUniform) {
  SeededRng rng(10);
  std::vector<int> hits(5, 0);
  const int n = 50000;
  for (int i = 0; i < n; ++i) ++hits[rng.uniform_index(5)];
  for (int h : hits) EXPECT_NEAR(h / static_cast<double>(n), 0.2, 0.01);
}

TEST(SeededRngTest, DerivedSeedsDifferByStream) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}

TEST(ClippedNormalTest, FloorAndPassThrough) {
  EXPECT_DOUBLE_EQ(clip_standard_normal(-0.3), kInvSqrtTwoPi);
  EXPECT_DOUBLE_EQ(clip_standard_normal(2.0), 2.0);
  EXPECT_NEAR(kInvSqrtTwoPi, 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-16);
}

TEST(ClippedNormalTest, NeverBelowFloorAndMeanNearSixTenths) {
  SeededRng rng(77);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = clipped_standard_normal(rng);
    ASSERT_GE(z, kInvSqrtTwoPi - 1e-15);
    sum += z;
  }
  // E[max(c, Z)] = c * Phi(c) + phi(c) with c = 1/sqrt(2 pi).
  const double c = kInvSqrtTwoPi;
  const double oracle = c * 0.5 * std::erfc(-c / std::sqrt(2.0)) +
                        std::exp(-0.5 * c * c) / std::sqrt(2.0 * std::numbers::pi);
  EXPECT_GE(sum / n, 0.55);
  EXPECT_LE(sum / n, 0.65);
  EXPECT_NEAR(sum / n, oracle, 0.01);
}

}  // namespace
}  // namespace zoomtune
