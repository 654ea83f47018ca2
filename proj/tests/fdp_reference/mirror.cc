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

#include "mirror.h"

#include <cstdint>
#include <sstream>

#include "reference_consumer.h"

namespace testforge::fdp_reference {

namespace {

using fdp::FdpCall;

template <typename T>
Int128 LlvmInt(LlvmConsumer& c, Int128 min, Int128 max) {
  return c.ConsumeIntegralInRange<T>(static_cast<T>(min), static_cast<T>(max));
}

Int128 LlvmIntegral(LlvmConsumer& c, int width, bool is_signed, Int128 min, Int128 max) {
  switch (width) {
    case 8: return is_signed ? LlvmInt<std::int8_t>(c, min, max) : LlvmInt<std::uint8_t>(c, min, max);
    case 16: return is_signed ? LlvmInt<std::int16_t>(c, min, max) : LlvmInt<std::uint16_t>(c, min, max);
    case 32: return is_signed ? LlvmInt<std::int32_t>(c, min, max) : LlvmInt<std::uint32_t>(c, min, max);
    default: return is_signed ? LlvmInt<std::int64_t>(c, min, max) : LlvmInt<std::uint64_t>(c, min, max);
  }
}

Int128 JazzerIntegral(JazzerConsumer& c, int width, Int128 min, Int128 max) {
  switch (width) {
    case 8: return c.consumeByte(static_cast<std::int8_t>(min), static_cast<std::int8_t>(max));
    case 16: return c.consumeShort(static_cast<std::int16_t>(min), static_cast<std::int16_t>(max));
    case 32: return c.consumeInt(static_cast<std::int32_t>(min), static_cast<std::int32_t>(max));
    default: return c.consumeLong(static_cast<std::int64_t>(min), static_cast<std::int64_t>(max));
  }
}

Bytes FromString(const std::string& s) { return Bytes(s.begin(), s.end()); }

Value LlvmStep(LlvmConsumer& c, const FdpCall& call) {
  return std::visit(
      [&](const auto& op) -> Value {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, fdp::ProduceBytes>) {
          return c.ConsumeBytes(op.value.size());
        } else if constexpr (std::is_same_v<T, fdp::ProduceRemainingBytes>) {
          return c.ConsumeRemainingBytes();
        } else if constexpr (std::is_same_v<T, fdp::ProduceString>) {
          switch (op.policy) {
            case fdp::StringPolicy::kRandomLength:
              return FromString(c.ConsumeRandomLengthString(op.max_length));
            case fdp::StringPolicy::kBytesAsString:
              return FromString(c.ConsumeBytesAsString(op.value.size()));
            case fdp::StringPolicy::kRemaining:
              return FromString(c.ConsumeRemainingBytesAsString());
          }
          return Bytes{};
        } else if constexpr (std::is_same_v<T, fdp::ProduceBool>) {
          return c.ConsumeBool();
        } else if constexpr (std::is_same_v<T, fdp::ProduceInt>) {
          return LlvmIntegral(c, op.width, op.is_signed, MinForWidth(op.width, op.is_signed),
                              MaxForWidth(op.width, op.is_signed));
        } else if constexpr (std::is_same_v<T, fdp::ProduceIntInRange>) {
          return LlvmIntegral(c, op.width, op.is_signed, op.min, op.max);
        } else if constexpr (std::is_same_v<T, fdp::ProduceFloatInRange>) {
          return c.ConsumeFloatingPointInRange(op.min, op.max);
        } else {
          return c.ConsumeProbability();
        }
      },
      call.op);
}

Value JazzerStep(JazzerConsumer& c, const FdpCall& call) {
  return std::visit(
      [&](const auto& op) -> Value {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, fdp::ProduceBytes>) {
          return c.consumeBytes(op.value.size());
        } else if constexpr (std::is_same_v<T, fdp::ProduceRemainingBytes>) {
          return c.consumeRemainingAsBytes();
        } else if constexpr (std::is_same_v<T, fdp::ProduceString>) {
          switch (op.policy) {
            case fdp::StringPolicy::kRandomLength:
              return FromString(c.consumeAsciiString(op.max_length));
            case fdp::StringPolicy::kBytesAsString:
              return FromString(c.consumeAsciiString(op.value.size()));
            case fdp::StringPolicy::kRemaining:
              return FromString(c.consumeRemainingAsAsciiString());
          }
          return Bytes{};
        } else if constexpr (std::is_same_v<T, fdp::ProduceBool>) {
          return c.consumeBoolean();
        } else if constexpr (std::is_same_v<T, fdp::ProduceInt>) {
          return JazzerIntegral(c, op.width, MinForWidth(op.width, true),
                                MaxForWidth(op.width, true));
        } else if constexpr (std::is_same_v<T, fdp::ProduceIntInRange>) {
          return JazzerIntegral(c, op.width, op.min, op.max);
        } else if constexpr (std::is_same_v<T, fdp::ProduceFloatInRange>) {
          return c.consumeRegularDouble(op.min, op.max);
        } else {
          return c.consumeProbabilityDouble();
        }
      },
      call.op);
}

}  // namespace

std::string ValueToString(const Value& v) {
  std::ostringstream os;
  if (const auto* i = std::get_if<Int128>(&v)) {
    os << Int128ToString(*i);
  } else if (const auto* b = std::get_if<bool>(&v)) {
    os << (*b ? "true" : "false");
  } else if (const auto* d = std::get_if<double>(&v)) {
    os.precision(17);
    os << *d;
  } else {
    os << '"' << EscapeBytes(std::get<Bytes>(v)) << '"';
  }
  return os.str();
}

std::vector<Value> ReferenceConsume(fdp::Dialect dialect, ByteSpan blob,
                                    const std::vector<FdpCall>& calls) {
  std::vector<Value> out;
  if (dialect == fdp::Dialect::kLlvm) {
    LlvmConsumer c(blob.data(), blob.size());
    for (const FdpCall& call : calls) out.push_back(LlvmStep(c, call));
  } else {
    JazzerConsumer c(blob.data(), blob.size());
    for (const FdpCall& call : calls) out.push_back(JazzerStep(c, call));
  }
  return out;
}

std::vector<Value> RequestedValues(const std::vector<FdpCall>& calls) {
  std::vector<Value> out;
  for (const FdpCall& call : calls) {
    out.push_back(std::visit([](const auto& op) -> Value { return op.value; }, call.op));
  }
  return out;
}

}  // namespace testforge::fdp_reference
