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

#ifndef TESTFORGE_TESTLANG_STRUCTURE_CHECK_H_
#define TESTFORGE_TESTLANG_STRUCTURE_CHECK_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/expected.h"
#include "testforge/testlang/ast.h"
#include "testforge/testlang/doc.h"

namespace testforge::testlang {

enum class MismatchCode {
  kTrailingBytes,
  kSizeRefMismatch,
  kConstraintViolated,
  kUnderflow,
  kTerminatorMissing,
  kDecodeFailed,
  kUnsupportedMode,
};

std::string_view MismatchCodeName(MismatchCode code);

struct FieldViolation {
  MismatchCode code = MismatchCode::kUnderflow;
  std::string field;
  std::size_t offset = 0;
  std::string message;
  bool operator==(const FieldViolation&) const = default;
};

// First entry is the primary finding. A structurally complete parse lists
// every constraint violation; a structural failure lists just the failure
// (or the size field that explains it).
struct Mismatch {
  std::vector<FieldViolation> violations;

  MismatchCode code() const { return violations.front().code; }
  const std::string& field() const { return violations.front().field; }
  // True when every violation names `path`.
  bool OnlyField(std::string_view path) const;
};

// Deterministic left-to-right parse of `blob` against the entry record.
// Must consume the whole blob. When the parse breaks structurally, each
// size-reference site is retried with other lengths (latest site first);
// if one alternative parses cleanly the failure is reported as
// SizeRefMismatch on that size field (followed by Underflow on the same
// field when the size ran past the input).
Expected<TestlangAst, Mismatch> StructureCheck(const TestlangDoc& doc,
                                               ByteSpan blob);

}  // namespace testforge::testlang

#endif  // TESTFORGE_TESTLANG_STRUCTURE_CHECK_H_
