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

#include "testforge/fdp/encoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace testforge::fdp {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint8_t kBackslash = '\\';
// Any byte other than a backslash ends a random-length string after an
// escape.
constexpr std::uint8_t kStringEnd = '\n';

Bytes EscapeForRandomLength(ByteSpan value) {
  Bytes out;
  out.reserve(value.size() + 2);
  for (std::uint8_t b : value) {
    out.push_back(b);
    if (b == kBackslash) out.push_back(kBackslash);
  }
  return out;
}

}  // namespace

// Dialect-specific decode rules. The integral and float engine is shared;
// what differs is which integral domains exist and how strings are read.
class DialectRules {
 public:
  virtual ~DialectRules() = default;

  // Domain of ConsumeIntegral<T> for the requested width.
  virtual Int128 TypeMin(int width, bool is_signed) const = 0;
  virtual Int128 TypeMax(int width, bool is_signed) const = 0;
  // Error code for bounds the consumer's type cannot express.
  virtual FdpErrorCode BoundsError() const = 0;
  // Maps an out-of-domain value for an unchecked call onto the domain.
  virtual Int128 CoerceToType(Int128 value, int width, bool is_signed) const = 0;
  // Front bytes that make the string consumer return `value`. Unset
  // when the value is not producible under a checked call.
  virtual std::optional<Bytes> EncodeString(ByteSpan value, StringPolicy policy,
                                            std::size_t max_length, bool checked) const = 0;
};

namespace {

class LlvmRules : public DialectRules {
 public:
  Int128 TypeMin(int width, bool is_signed) const override {
    return MinForWidth(width, is_signed);
  }
  Int128 TypeMax(int width, bool is_signed) const override {
    return MaxForWidth(width, is_signed);
  }
  FdpErrorCode BoundsError() const override { return FdpErrorCode::kRangeViolation; }
  Int128 CoerceToType(Int128 value, int width, bool is_signed) const override {
    return FromBits(ToBits(value, width), width, is_signed);
  }
  std::optional<Bytes> EncodeString(ByteSpan value, StringPolicy policy,
                                    std::size_t max_length, bool checked) const override {
    switch (policy) {
      case StringPolicy::kRandomLength: {
        if (value.size() > max_length) {
          if (checked) return std::nullopt;
          value = value.first(max_length);
        }
        Bytes out = EscapeForRandomLength(value);
        if (value.size() < max_length) {
          out.push_back(kBackslash);
          out.push_back(kStringEnd);
        }
        return out;
      }
      case StringPolicy::kBytesAsString:
      case StringPolicy::kRemaining:
        return Bytes(value.begin(), value.end());
    }
    return std::nullopt;
  }
};

// Java has no unsigned integral types and the modeled string consumers are
// ASCII-only: each byte is masked to 7 bits.
class JazzerRules : public DialectRules {
 public:
  Int128 TypeMin(int width, bool) const override { return MinForWidth(width, true); }
  Int128 TypeMax(int width, bool) const override { return MaxForWidth(width, true); }
  FdpErrorCode BoundsError() const override { return FdpErrorCode::kValueNotProducible; }
  Int128 CoerceToType(Int128 value, int width, bool) const override {
    return FromBits(ToBits(value, width), width, true);
  }
  std::optional<Bytes> EncodeString(ByteSpan value, StringPolicy policy,
                                    std::size_t max_length, bool checked) const override {
    Bytes ascii(value.begin(), value.end());
    for (std::uint8_t& b : ascii) {
      if (b < 0x80) continue;
      if (checked) return std::nullopt;
      b &= 0x7F;
    }
    switch (policy) {
      case StringPolicy::kRandomLength:
        return LlvmRules().EncodeString(ascii, policy, max_length, checked);
      case StringPolicy::kBytesAsString:
        // Sized ASCII strings go through the bounded reader with the size as
        // the bound, so escapes apply but no end marker is needed.
        return EscapeForRandomLength(ascii);
      case StringPolicy::kRemaining:
        return ascii;
    }
    return std::nullopt;
  }
};

std::unique_ptr<DialectRules> MakeRules(Dialect d) {
  if (d == Dialect::kJazzer) return std::make_unique<JazzerRules>();
  return std::make_unique<LlvmRules>();
}

// Smallest u in [0, 2^64) with f(u) >= target; kU64Max when none.
template <typename F>
std::uint64_t LowerBound(F f, double target) {
  std::uint64_t lo = 0;
  std::uint64_t hi = kU64Max;
  if (f(hi) < target) return hi;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (f(mid) >= target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

// Draw whose decode equals `target`, or the nearest decode.
template <typename F>
std::pair<std::uint64_t, bool> FindDraw(F f, double target) {
  std::uint64_t u = LowerBound(f, target);
  if (f(u) == target) return {u, true};
  if (u > 0 && std::abs(f(u - 1) - target) <= std::abs(f(u) - target)) return {u - 1, false};
  return {u, false};
}

}  // namespace

std::string_view FdpErrorCodeName(FdpErrorCode code) {
  switch (code) {
    case FdpErrorCode::kProduceAfterExhaustion: return "ProduceAfterExhaustion";
    case FdpErrorCode::kValueNotProducible: return "ValueNotProducible";
    case FdpErrorCode::kRangeViolation: return "RangeViolation";
    case FdpErrorCode::kNonFiniteFloat: return "NonFiniteFloat";
  }
  return "Unknown";
}

double ProbabilityFromBits(std::uint64_t u) {
  double result = static_cast<double>(u);
  result /= static_cast<double>(kU64Max);
  return result;
}

bool FloatRangeSplits(double min, double max) {
  return max > 0.0 && min < 0.0 && max > min + std::numeric_limits<double>::max();
}

double FloatFromDraw(double min, double max, bool split, std::uint64_t u) {
  double range = 0.0;
  double result = min;
  if (FloatRangeSplits(min, max)) {
    range = (max / 2.0) - (min / 2.0);
    if (split) result += range;
  } else {
    range = max - min;
  }
  return result + range * ProbabilityFromBits(u);
}

FdpEncoder::FdpEncoder(Dialect dialect) : dialect_(dialect), rules_(MakeRules(dialect)) {}
FdpEncoder::~FdpEncoder() = default;
FdpEncoder::FdpEncoder(FdpEncoder&&) noexcept = default;
FdpEncoder& FdpEncoder::operator=(FdpEncoder&&) noexcept = default;

FdpError FdpEncoder::Error(FdpErrorCode code, std::string message) const {
  return {code, calls_ - 1, std::move(message)};
}

Expected<bool, FdpError> FdpEncoder::Begin(bool checked) {
  ++calls_;
  if (!exhausted_) return true;
  if (!checked) return false;
  return MakeUnexpected(
      Error(FdpErrorCode::kProduceAfterExhaustion, "producer called after remaining bytes"));
}

void FdpEncoder::PushIntegral(std::uint64_t range, std::uint64_t offset, int width) {
  int n = 0;
  while (8 * n < width && (range >> (8 * n)) > 0) ++n;
  // The consumer pulls the most significant byte first.
  for (int i = n - 1; i >= 0; --i) {
    back_.push_back(static_cast<std::uint8_t>(offset >> (8 * i)));
  }
}

Expected<void, FdpError> FdpEncoder::Produce(const FdpCall& call) {
  return std::visit(
      [&](const auto& op) -> Expected<void, FdpError> {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, fdp::ProduceBytes>) {
          return ProduceBytes(op.value, call.checked);
        } else if constexpr (std::is_same_v<T, fdp::ProduceRemainingBytes>) {
          return ProduceRemainingBytes(op.value, call.checked);
        } else if constexpr (std::is_same_v<T, fdp::ProduceString>) {
          return ProduceString(op.value, op.policy, op.max_length, call.checked);
        } else if constexpr (std::is_same_v<T, fdp::ProduceBool>) {
          return ProduceBool(op.value, call.checked);
        } else if constexpr (std::is_same_v<T, fdp::ProduceInt>) {
          return ProduceInt(op.width, op.is_signed, op.value, call.checked);
        } else if constexpr (std::is_same_v<T, fdp::ProduceIntInRange>) {
          return ProduceIntInRange(op.width, op.is_signed, op.min, op.max, op.value,
                                   call.checked);
        } else if constexpr (std::is_same_v<T, fdp::ProduceFloatInRange>) {
          return ProduceFloatInRange(op.min, op.max, op.value, call.checked);
        } else {
          return ProduceProbability(op.value, call.checked);
        }
      },
      call.op);
}

Expected<void, FdpError> FdpEncoder::ProduceBytes(ByteSpan value, bool checked) {
  auto go = Begin(checked);
  if (!go) return MakeUnexpected(go.error());
  if (!*go) return {};
  front_.insert(front_.end(), value.begin(), value.end());
  return {};
}

Expected<void, FdpError> FdpEncoder::ProduceRemainingBytes(ByteSpan value, bool checked) {
  auto go = Begin(checked);
  if (!go) return MakeUnexpected(go.error());
  if (!*go) return {};
  front_.insert(front_.end(), value.begin(), value.end());
  exhausted_ = true;
  return {};
}

Expected<void, FdpError> FdpEncoder::ProduceString(ByteSpan value, StringPolicy policy,
                                                   std::size_t max_length, bool checked) {
  auto go = Begin(checked);
  if (!go) return MakeUnexpected(go.error());
  if (!*go) return {};
  auto bytes = rules_->EncodeString(value, policy, max_length, checked);
  if (!bytes) {
    return MakeUnexpected(Error(FdpErrorCode::kValueNotProducible,
                                "string cannot be returned by the " +
                                    std::string(DialectName(dialect_)) + " string consumer"));
  }
  front_.insert(front_.end(), bytes->begin(), bytes->end());
  if (policy == StringPolicy::kRemaining) exhausted_ = true;
  return {};
}

Expected<void, FdpError> FdpEncoder::ProduceBool(bool value, bool checked) {
  auto go = Begin(checked);
  if (!go) return MakeUnexpected(go.error());
  if (!*go) return {};
  back_.push_back(value ? 1 : 0);
  return {};
}

Expected<void, FdpError> FdpEncoder::ProduceInt(int width, bool is_signed, Int128 value,
                                                bool checked) {
  Int128 lo = rules_->TypeMin(width, is_signed);
  Int128 hi = rules_->TypeMax(width, is_signed);
  if (!exhausted_ && (value < lo || value > hi)) {
    if (checked) {
      ++calls_;
      bool fits_request = FitsWidth(value, width, is_signed);
      return MakeUnexpected(Error(fits_request ? FdpErrorCode::kValueNotProducible
                                             : FdpErrorCode::kRangeViolation,
                                  Int128ToString(value) + " is outside the consumer type"));
    }
    value = rules_->CoerceToType(value, width, is_signed);
  }
  return ProduceIntInRange(width, is_signed, lo, hi, value, checked);
}

Expected<void, FdpError> FdpEncoder::ProduceIntInRange(int width, bool is_signed, Int128 min,
                                                       Int128 max, Int128 value, bool checked) {
  auto go = Begin(checked);
  if (!go) return MakeUnexpected(go.error());
  if (!*go) return {};
  if (min > max) {
    return MakeUnexpected(Error(FdpErrorCode::kRangeViolation, "min exceeds max"));
  }
  Int128 lo = rules_->TypeMin(width, is_signed);
  Int128 hi = rules_->TypeMax(width, is_signed);
  if (min < lo || max > hi) {
    return MakeUnexpected(Error(rules_->BoundsError(), "bounds outside the consumer type"));
  }
  Int128 span = max - min + 1;
  if (value < min || value > max) {
    if (checked) {
      return MakeUnexpected(Error(FdpErrorCode::kRangeViolation,
                                  Int128ToString(value) + " outside [" + Int128ToString(min) +
                                      ", " + Int128ToString(max) + "]"));
    }
    Int128 offset = (value - min) % span;
    if (offset < 0) offset += span;
    value = min + offset;
  }
  PushIntegral(static_cast<std::uint64_t>(max - min), static_cast<std::uint64_t>(value - min),
               width);
  return {};
}

Expected<void, FdpError> FdpEncoder::PushFloat(double min, double max, double value,
                                               bool checked) {
  if (!std::isfinite(min) || !std::isfinite(max)) {
    return MakeUnexpected(Error(FdpErrorCode::kNonFiniteFloat, "non-finite bound"));
  }
  if (min > max) return MakeUnexpected(Error(FdpErrorCode::kRangeViolation, "min exceeds max"));
  if (!std::isfinite(value)) {
    if (checked) return MakeUnexpected(Error(FdpErrorCode::kNonFiniteFloat, "non-finite value"));
    value = std::isnan(value) || value < 0 ? min : max;
  }
  if (value < min || value > max) {
    if (checked) {
      return MakeUnexpected(Error(FdpErrorCode::kRangeViolation, "value outside the range"));
    }
    value = std::clamp(value, min, max);
  }
  bool splits = FloatRangeSplits(min, max);
  bool upper = splits && value > FloatFromDraw(min, max, false, kU64Max);
  auto [u, exact] = FindDraw([&](std::uint64_t d) { return FloatFromDraw(min, max, upper, d); },
                             value);
  if (!exact && checked) {
    return MakeUnexpected(Error(FdpErrorCode::kValueNotProducible,
                                "value is not reachable by the float consumer"));
  }
  if (splits) back_.push_back(upper ? 1 : 0);
  PushIntegral(kU64Max, u, 64);
  return {};
}

Expected<void, FdpError> FdpEncoder::ProduceFloatInRange(double min, double max, double value,
                                                         bool checked) {
  auto go = Begin(checked);
  if (!go) return MakeUnexpected(go.error());
  if (!*go) return {};
  return PushFloat(min, max, value, checked);
}

Expected<void, FdpError> FdpEncoder::ProduceProbability(double value, bool checked) {
  auto go = Begin(checked);
  if (!go) return MakeUnexpected(go.error());
  if (!*go) return {};
  if (!std::isfinite(value)) {
    if (checked) return MakeUnexpected(Error(FdpErrorCode::kNonFiniteFloat, "non-finite value"));
    value = std::isnan(value) || value < 0 ? 0.0 : 1.0;
  }
  if (value < 0.0 || value > 1.0) {
    if (checked) {
      return MakeUnexpected(Error(FdpErrorCode::kRangeViolation, "probability outside [0, 1]"));
    }
    value = std::clamp(value, 0.0, 1.0);
  }
  auto [u, exact] = FindDraw(ProbabilityFromBits, value);
  if (!exact && checked) {
    return MakeUnexpected(
        Error(FdpErrorCode::kValueNotProducible, "probability is not reachable"));
  }
  PushIntegral(kU64Max, u, 64);
  return {};
}

Bytes FdpEncoder::Finalize() const {
  Bytes out = front_;
  out.insert(out.end(), back_.rbegin(), back_.rend());
  return out;
}

Expected<Bytes, FdpError> Encode(Dialect dialect, std::span<const FdpCall> calls) {
  FdpEncoder encoder(dialect);
  for (const FdpCall& call : calls) {
    auto r = encoder.Produce(call);
    if (!r) return MakeUnexpected(r.error());
  }
  return encoder.Finalize();
}

}  // namespace testforge::fdp
