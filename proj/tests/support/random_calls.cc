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

#include "support/random_calls.h"

#include <cfloat>

#include "fdp_reference/reference_consumer.h"
#include "testforge/common/int128.h"

namespace testforge::test_support {

namespace {

using fdp::Dialect;
using fdp::FdpCall;
using fdp_reference::JazzerConsumer;
using fdp_reference::LlvmConsumer;

Bytes RandomBytes(Rng& rng, std::size_t n, bool ascii) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.Uniform(0, ascii ? 0x7F : 0xFF));
  return out;
}

double FloatFromConsumer(Dialect d, double min, double max, Rng& rng) {
  Bytes raw = RandomBytes(rng, 9, false);
  if (d == Dialect::kLlvm) return LlvmConsumer(raw.data(), raw.size()).ConsumeFloatingPointInRange(min, max);
  return JazzerConsumer(raw.data(), raw.size()).consumeRegularDouble(min, max);
}

double ProbabilityFromConsumer(Dialect d, Rng& rng) {
  Bytes raw = RandomBytes(rng, 8, false);
  if (d == Dialect::kLlvm) return LlvmConsumer(raw.data(), raw.size()).ConsumeProbability();
  return JazzerConsumer(raw.data(), raw.size()).consumeProbabilityDouble();
}

FdpCall RandomInt(Dialect d, Rng& rng, bool ranged) {
  static constexpr int kWidths[] = {8, 16, 32, 64};
  int width = kWidths[rng.Index(4)];
  // Jazzer only has signed integral consumers.
  bool is_signed = d == Dialect::kJazzer || rng.Bernoulli(0.5);
  Int128 lo = MinForWidth(width, is_signed);
  Int128 hi = MaxForWidth(width, is_signed);
  if (!ranged) return {fdp::ProduceInt{width, is_signed, rng.UniformWide(lo, hi)}};
  Int128 a = rng.UniformWide(lo, hi);
  Int128 b = rng.Bernoulli(0.5) ? rng.UniformWide(lo, hi)
                                : std::min<Int128>(hi, a + static_cast<Int128>(rng.Uniform(0, 300)));
  Int128 min = std::min(a, b);
  Int128 max = std::max(a, b);
  return {fdp::ProduceIntInRange{width, is_signed, min, max, rng.UniformWide(min, max)}};
}

FdpCall RandomFloat(Dialect d, Rng& rng) {
  static constexpr double kBounds[][2] = {
      {0.0, 1.0}, {-1.0, 1.0}, {-1e6, 1e3}, {10.0, 10.0}, {-DBL_MAX, DBL_MAX}, {-DBL_MAX, 0.0},
      {0.0, DBL_MAX}, {-5.5, 1e300}};
  const auto& b = kBounds[rng.Index(std::size(kBounds))];
  return {fdp::ProduceFloatInRange{b[0], b[1], FloatFromConsumer(d, b[0], b[1], rng)}};
}

FdpCall RandomString(Dialect d, Rng& rng) {
  bool ascii = d == Dialect::kJazzer;
  if (rng.Bernoulli(0.5)) {
    std::size_t max_length = rng.Uniform(0, 24);
    return {fdp::ProduceString{RandomBytes(rng, rng.Uniform(0, max_length), ascii),
                               fdp::StringPolicy::kRandomLength, max_length}};
  }
  Bytes v = RandomBytes(rng, rng.Uniform(0, 24), ascii);
  return {fdp::ProduceString{v, fdp::StringPolicy::kBytesAsString, 0}};
}

}  // namespace

std::vector<FdpCall> RandomCallList(Dialect d, Rng& rng) {
  std::vector<FdpCall> calls;
  std::size_t n = rng.Uniform(0, 12);
  for (std::size_t i = 0; i < n; ++i) {
    switch (rng.Uniform(0, 6)) {
      case 0: calls.push_back({fdp::ProduceBytes{RandomBytes(rng, rng.Uniform(0, 24), false)}}); break;
      case 1: calls.push_back(RandomString(d, rng)); break;
      case 2: calls.push_back({fdp::ProduceBool{rng.Bernoulli(0.5)}}); break;
      case 3: calls.push_back(RandomInt(d, rng, false)); break;
      case 4: calls.push_back(RandomInt(d, rng, true)); break;
      case 5: calls.push_back(RandomFloat(d, rng)); break;
      default: calls.push_back({fdp::ProduceProbability{ProbabilityFromConsumer(d, rng)}}); break;
    }
  }
  // A remaining-bytes consumer can only come last.
  if (rng.Bernoulli(0.3)) {
    bool ascii = d == Dialect::kJazzer;
    Bytes tail = RandomBytes(rng, rng.Uniform(0, 24), ascii);
    if (rng.Bernoulli(0.5)) {
      calls.push_back({fdp::ProduceRemainingBytes{tail}});
    } else {
      calls.push_back({fdp::ProduceString{tail, fdp::StringPolicy::kRemaining, 0}});
    }
  }
  return calls;
}

}  // namespace testforge::test_support
