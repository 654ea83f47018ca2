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

#ifndef TESTFORGE_FDP_ENCODER_H_
#define TESTFORGE_FDP_ENCODER_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "testforge/common/bytes.h"
#include "testforge/common/expected.h"
#include "testforge/fdp/call.h"

namespace testforge::fdp {

enum class FdpErrorCode {
  kProduceAfterExhaustion,
  kValueNotProducible,
  kRangeViolation,
  kNonFiniteFloat,
};

std::string_view FdpErrorCodeName(FdpErrorCode code);

struct FdpError {
  FdpErrorCode code = FdpErrorCode::kRangeViolation;
  // Index of the offending call in production order.
  std::size_t call_index = 0;
  std::string message;
};

class DialectRules;

// Builds a buffer that a FuzzedDataProvider consumer, executing the
// mirrored consume sequence, decodes to the produced values. Structured data
// (bytes, strings) is read by the consumer from the front of the buffer and
// primitives from the back, so the state keeps two sides and emits
// front ++ reverse(back).
class FdpEncoder {
 public:
  explicit FdpEncoder(Dialect dialect);
  ~FdpEncoder();
  FdpEncoder(FdpEncoder&&) noexcept;
  FdpEncoder& operator=(FdpEncoder&&) noexcept;

  Expected<void, FdpError> Produce(const FdpCall& call);

  Expected<void, FdpError> ProduceBytes(ByteSpan value, bool checked = true);
  Expected<void, FdpError> ProduceRemainingBytes(ByteSpan value, bool checked = true);
  Expected<void, FdpError> ProduceString(ByteSpan value, StringPolicy policy,
                                         std::size_t max_length, bool checked = true);
  Expected<void, FdpError> ProduceBool(bool value, bool checked = true);
  Expected<void, FdpError> ProduceInt(int width, bool is_signed, Int128 value,
                                      bool checked = true);
  Expected<void, FdpError> ProduceIntInRange(int width, bool is_signed, Int128 min,
                                             Int128 max, Int128 value, bool checked = true);
  Expected<void, FdpError> ProduceFloatInRange(double min, double max, double value,
                                               bool checked = true);
  Expected<void, FdpError> ProduceProbability(double value, bool checked = true);

  Bytes Finalize() const;

  Dialect dialect() const { return dialect_; }
  bool exhausted() const { return exhausted_; }
  std::size_t calls() const { return calls_; }

 private:
  FdpError Error(FdpErrorCode code, std::string message) const;
  // Common prologue; returns false when the call must be skipped (an
  // unchecked call after exhaustion).
  Expected<bool, FdpError> Begin(bool checked);
  // Appends the bytes that make ConsumeIntegralInRange over a range of
  // `range` (max - min) return min + offset.
  void PushIntegral(std::uint64_t range, std::uint64_t offset, int width);
  Expected<void, FdpError> PushFloat(double min, double max, double value, bool checked);

  Dialect dialect_;
  std::unique_ptr<DialectRules> rules_;
  Bytes front_;
  // Production order; the consumer reads it from the end of the buffer.
  Bytes back_;
  bool exhausted_ = false;
  std::size_t calls_ = 0;
};

Expected<Bytes, FdpError> Encode(Dialect dialect, std::span<const FdpCall> calls);

// Double value the consumer's ConsumeProbability<double> returns for the
// raw 64-bit draw `u`.
double ProbabilityFromBits(std::uint64_t u);
// Value ConsumeFloatingPointInRange<double> returns for a split flag and a
// raw probability draw. `split` is ignored when the range does not need it.
double FloatFromDraw(double min, double max, bool split, std::uint64_t u);
// Whether the range is wide enough that the consumer spends a bool on it.
bool FloatRangeSplits(double min, double max);

}  // namespace testforge::fdp

#endif  // TESTFORGE_FDP_ENCODER_H_
