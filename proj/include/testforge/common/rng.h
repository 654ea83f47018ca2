// Copyright 2026 The Testforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TESTFORGE_COMMON_RNG_H_
#define TESTFORGE_COMMON_RNG_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "testforge/common/int128.h"

namespace testforge {

// Counter-based, splittable random stream. The n-th output is a pure
// function of (key, n), and Fork(label) derives an independent stream whose
// key depends only on the parent key and the label. Generation forks one
// stream per field path so that editing one field's description leaves the
// values drawn for its siblings unchanged.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return Next(); }

  std::uint64_t Next();
  // Uniform in [lo, hi]; lo <= hi.
  std::uint64_t Uniform(std::uint64_t lo, std::uint64_t hi);
  Int128 UniformWide(Int128 lo, Int128 hi);
  // Uniform index in [0, n); n > 0.
  std::size_t Index(std::size_t n);
  // Uniform double in [0, 1).
  double UnitDouble();
  bool Bernoulli(double p) { return UnitDouble() < p; }
  // Picks an index with probability proportional to weights[i].
  // Requires a positive total.
  std::size_t Weighted(std::span<const double> weights);

  Rng Fork(std::string_view label) const;
  Rng Fork(std::uint64_t label) const;

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  Rng(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// 64-bit FNV-1a; stable across platforms, used for stream labels.
std::uint64_t Fnv1a64(std::string_view data);

}  // namespace testforge

#endif  // TESTFORGE_COMMON_RNG_H_
