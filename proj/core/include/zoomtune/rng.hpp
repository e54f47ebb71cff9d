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

#ifndef ZOOMTUNE_RNG_HPP_
#define ZOOMTUNE_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace zoomtune {

/// Seeded random source shared by every module.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. All mappings from raw 64-bit words to uniforms, normals and
/// indices are implemented here rather than with std:: distributions, so a
/// given seed yields the same draws on every platform and standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on (0, 1]; safe to take the logarithm of.
  double uniform_open_zero();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Unbiased (rejection on the top bucket).
  std::size_t uniform_index(std::size_t n);

  /// Standard normal via Box-Muller. Always consumes exactly two words.
  double normal();

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for stream `stream` of a run seeded with `parent`.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

/// max(1/sqrt(2*pi), z): the clip applied to Thompson perturbations.
double clip_standard_normal(double z);

/// A standard normal draw floored at 1/sqrt(2*pi).
double clipped_standard_normal(SeededRng& rng);

inline constexpr double kInvSqrtTwoPi = 0.39894228040143267794;

}  // namespace zoomtune

#endif  // ZOOMTUNE_RNG_HPP_
