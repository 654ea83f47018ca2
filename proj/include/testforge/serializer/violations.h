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

#ifndef TESTFORGE_SERIALIZER_VIOLATIONS_H_
#define TESTFORGE_SERIALIZER_VIOLATIONS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/int128.h"
#include "testforge/common/rng.h"
#include "testforge/testlang/ast.h"
#include "testforge/testlang/doc.h"
#include "testforge/testlang/structure_check.h"

namespace testforge::serializer {

// One change to an AST that should break a single field.
struct AstEdit {
  // Node to change.
  std::string path;
  // Field the structure checker is expected to blame.
  std::string blamed;
  std::optional<Int128> int_value;  // pinned
  std::optional<Bytes> content;
  std::optional<std::size_t> element_count;  // truncation only
};

// Crash-mode menu over a coverage AST:
//   constrained ints       bounds +-1, 0, width max, signed width min
//   size fields            0, length+1, 2 x length
//   const/enum bytes       one-bit flip, last byte inverted
//   open tail ranges       max+1, 8 x max, min-1, 0
//   referenced content     8 x length when the size field is constrained
//   open tail arrays       min-1 elements
// Only values outside the field's constraint are listed.
std::vector<AstEdit> CrashMenu(const testlang::TestlangDoc& doc, const testlang::AstNode& root);

// Size-field relationship breaks: each size field's value +delta for delta
// in `deltas`, without touching the content.
std::vector<AstEdit> SizeDeltaMenu(const testlang::TestlangDoc& doc,
                                   const testlang::AstNode& root,
                                   const std::vector<Int128>& deltas);

void ApplyEdit(testlang::AstNode& root, const AstEdit& edit);

struct VerifiedEdit {
  testlang::AstNode root;
  Bytes bytes;
  AstEdit edit;
  testlang::MismatchCode code = testlang::MismatchCode::kConstraintViolated;
};

// Draws a field uniformly, then one of its edits, and keeps the first edit
// whose rendering the structure checker rejects on exactly the blamed field
// (ConstraintViolated or SizeRefMismatch). Rejected edits are dropped and
// the draw repeats; unset when nothing verifies.
std::optional<VerifiedEdit> DrawVerifiedEdit(const testlang::TestlangDoc& doc,
                                             const testlang::AstNode& root,
                                             std::vector<AstEdit> menu, Rng& rng);

}  // namespace testforge::serializer

#endif  // TESTFORGE_SERIALIZER_VIOLATIONS_H_
