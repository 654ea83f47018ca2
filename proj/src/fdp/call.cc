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

#include "testforge/fdp/call.h"

namespace testforge::fdp {

std::string_view DialectName(Dialect d) { return d == Dialect::kLlvm ? "llvm" : "jazzer"; }

std::optional<Dialect> ParseDialect(std::string_view name) {
  if (name == "llvm") return Dialect::kLlvm;
  if (name == "jazzer") return Dialect::kJazzer;
  return std::nullopt;
}

std::string_view StringPolicyName(StringPolicy p) {
  switch (p) {
    case StringPolicy::kRandomLength: return "random_length";
    case StringPolicy::kBytesAsString: return "bytes_as_string";
    case StringPolicy::kRemaining: return "remaining";
  }
  return "unknown";
}

std::string_view OpName(const CallOp& op) {
  static constexpr std::string_view kNames[] = {
      "bytes", "remaining_bytes", "string", "bool", "int", "int_in_range", "float_in_range",
      "probability"};
  return kNames[op.index()];
}

}  // namespace testforge::fdp
