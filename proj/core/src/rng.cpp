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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "zoomtune/errors.hpp"

namespace zoomtune {

namespace {
constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;
}  // namespace

double SeededRng::uniform01() {
  return static_cast<double>(engine_() >> 11) * kTwoPowMinus53;
}

double SeededRng::uniform_open_zero() {
  return static_cast<double>((engine_() >> 11) + 1) * kTwoPowMinus53;
}

std::size_t SeededRng::uniform_index(std::size_t n) {
  require(n > 0, "uniform_index: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t word = engine_();
  while (word >= limit) word = engine_();
  return static_cast<std::size_t>(word % range);
}

double SeededRng::normal() {
  const double u1 = uniform_open_zero();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
  return splitmix64(splitmix64(parent) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

double clip_standard_normal(double z) { return std::max(kInvSqrtTwoPi, z); }

double clipped_standard_normal(SeededRng& rng) { return clip_standard_normal(rng.normal()); }

}  // namespace zoomtune
