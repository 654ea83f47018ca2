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

#ifndef TESTFORGE_FDP_CALL_H_
#define TESTFORGE_FDP_CALL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "testforge/common/bytes.h"
#include "testforge/common/int128.h"

namespace testforge::fdp {

enum class Dialect { kLlvm, kJazzer };

std::string_view DialectName(Dialect d);
std::optional<Dialect> ParseDialect(std::string_view name);

// How the consumer reads a string.
enum class StringPolicy {
  // ConsumeRandomLengthString(max_length): backslash-escaped, bounded.
  kRandomLength,
  // ConsumeBytesAsString(size).
  kBytesAsString,
  // ConsumeRemainingBytesAsString().
  kRemaining,
};

std::string_view StringPolicyName(StringPolicy p);

struct ProduceBytes {
  Bytes value;
  bool operator==(const ProduceBytes&) const = default;
};
struct ProduceRemainingBytes {
  Bytes value;
  bool operator==(const ProduceRemainingBytes&) const = default;
};
struct ProduceString {
  Bytes value;
  StringPolicy policy = StringPolicy::kRandomLength;
  // kRandomLength only.
  std::size_t max_length = 0;
  bool operator==(const ProduceString&) const = default;
};
struct ProduceBool {
  bool value = false;
  bool operator==(const ProduceBool&) const = default;
};
// ConsumeIntegral<T>: the full domain of the width.
struct ProduceInt {
  int width = 32;
  bool is_signed = false;
  Int128 value = 0;
  bool operator==(const ProduceInt&) const = default;
};
struct ProduceIntInRange {
  int width = 32;
  bool is_signed = false;
  Int128 min = 0;
  Int128 max = 0;
  Int128 value = 0;
  bool operator==(const ProduceIntInRange&) const = default;
};
struct ProduceFloatInRange {
  double min = 0;
  double max = 0;
  double value = 0;
  bool operator==(const ProduceFloatInRange&) const = default;
};
struct ProduceProbability {
  double value = 0;
  bool operator==(const ProduceProbability&) const = default;
};

using CallOp = std::variant<ProduceBytes, ProduceRemainingBytes, ProduceString,
                            ProduceBool, ProduceInt, ProduceIntInRange,
                            ProduceFloatInRange, ProduceProbability>;

// One producer call. Checked calls reject values the consumer cannot
// return; unchecked calls coerce them.
struct FdpCall {
  CallOp op;
  bool checked = true;
  bool operator==(const FdpCall&) const = default;
};

// Short name used in call-list documents ("int_in_range", ...).
std::string_view OpName(const CallOp& op);

}  // namespace testforge::fdp

#endif  // TESTFORGE_FDP_CALL_H_
