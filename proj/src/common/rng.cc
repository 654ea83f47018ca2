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

#include "testforge/common/rng.h"

#include <cassert>
#include <cmath>

namespace testforge {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Fnv1a64(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

Rng::Rng(std::uint64_t seed) : key_(Mix64(seed + kGamma)) {}

std::uint64_t Rng::Next() {
  // SplitMix64 keyed by the stream key; output n depends only on (key, n).
  return Mix64(key_ ^ Mix64(++counter_ * kGamma));
}

std::uint64_t Rng::Uniform(std::uint64_t lo, std::uint64_t hi) {
  assert(lo <= hi);
  std::uint64_t span = hi - lo;
  if (span == max()) return Next();
  std::uint64_t n = span + 1;
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(Next()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(Next()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return lo + static_cast<std::uint64_t>(m >> 64);
}

Int128 Rng::UniformWide(Int128 lo, Int128 hi) {
  assert(lo <= hi);
  auto span = static_cast<unsigned __int128>(hi - lo);
  if (span <= max()) {
    return lo + static_cast<Int128>(Uniform(0, static_cast<std::uint64_t>(span)));
  }
  // Only reachable for spans wider than 64 bits, which no field width has.
  unsigned __int128 r =
      (static_cast<unsigned __int128>(Next()) << 64) | Next();
  return lo + static_cast<Int128>(r % (span + 1));
}

std::size_t Rng::Index(std::size_t n) {
  assert(n > 0);
  return static_cast<std::size_t>(Uniform(0, n - 1));
}

double Rng::UnitDouble() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

std::size_t Rng::Weighted(std::span<const double> weights) {
  double total = 0;
  for (double w : weights) total += w;
  assert(total > 0);
  double target = UnitDouble() * total;
  double acc = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  // Rounding can leave target == total; return the last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0) return i;
  }
  return weights.size() - 1;
}

Rng Rng::Fork(std::string_view label) const { return Fork(Fnv1a64(label)); }

Rng Rng::Fork(std::uint64_t label) const {
  return Rng(Mix64(key_ ^ Mix64(label + kGamma)) ^ 0x5851F42D4C957F2DULL, 0);
}

}  // namespace testforge
