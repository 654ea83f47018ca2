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

#ifndef TESTFORGE_SERIALIZER_GENERATORS_H_
#define TESTFORGE_SERIALIZER_GENERATORS_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "testforge/common/bytes.h"
#include "testforge/common/expected.h"
#include "testforge/common/rng.h"
#include "testforge/testlang/doc.h"

namespace testforge::serializer {

// Length a builtin produces when the field leaves it open and no "length"
// argument is given.
std::uint64_t BuiltinNaturalLength(const testlang::BuiltinGenerator& gen, Rng& rng);

// Exactly `length` bytes from a builtin: ascii_digits, ascii_printable,
// utf8_text (always valid UTF-8) or uuid_like (8-4-4-4-12 lowercase hex,
// repeated or cut to the length).
Bytes RunBuiltin(const testlang::BuiltinGenerator& gen, std::uint64_t length, Rng& rng);

struct ExternalBudget {
  std::chrono::milliseconds timeout{2000};
  // Hard cap on captured stdout; the field's own length bound may be lower.
  std::size_t max_output = 64 * 1024;
};

struct ExternalError {
  enum class Kind { kSpawnFailed, kTimeout, kOutputTooLarge, kNonzeroExit };
  Kind kind = Kind::kSpawnFailed;
  // Exit code (or signal number, negated) for kNonzeroExit.
  int status = 0;
  std::string message;
};

std::string_view ExternalErrorKindName(ExternalError::Kind kind);

// Runs an external generator. argv comes from the command template with
// "{seed}", "{max_bytes}" and "{field}" substituted; the same values are
// exported as TESTFORGE_SEED, TESTFORGE_MAX_BYTES and TESTFORGE_FIELD.
// stdout is the content; more than `max_bytes` bytes is OutputTooLarge.
Expected<Bytes, ExternalError> RunExternalGenerator(const testlang::ExternalGenerator& gen,
                                                    std::uint64_t seed, std::size_t max_bytes,
                                                    std::string_view field_path,
                                                    const ExternalBudget& budget);

}  // namespace testforge::serializer

#endif  // TESTFORGE_SERIALIZER_GENERATORS_H_
