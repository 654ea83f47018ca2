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

#ifndef TESTFORGE_SERIALIZER_GENERATE_H_
#define TESTFORGE_SERIALIZER_GENERATE_H_

#include <string>
#include <string_view>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/expected.h"
#include "testforge/common/rng.h"
#include "testforge/fdp/call.h"
#include "testforge/serializer/generators.h"
#include "testforge/testlang/ast.h"
#include "testforge/testlang/doc.h"

namespace testforge::serializer {

enum class GenErrorCode {
  kNoEligibleField,
  kExternalGeneratorFailure,
  kUnsupportedKindForFdp,
  kInvalidDocument,
};

std::string_view GenErrorCodeName(GenErrorCode code);

struct GenError {
  GenErrorCode code = GenErrorCode::kInvalidDocument;
  std::string field;
  std::string message;
};

struct GenOptions {
  ExternalBudget external;
};

struct Generated {
  Bytes bytes;
  testlang::TestlangAst ast;
};

struct GeneratedFdp {
  std::vector<fdp::FdpCall> calls;
  testlang::TestlangAst ast;
};

// Renders a bytes-mode document. Every field draws from rng.Fork(path), so
// output is a pure function of (doc, rng key, mode). Coverage mode satisfies
// every constraint and size reference; crash mode then breaks exactly one
// field, chosen uniformly among the fields whose violation the structure
// checker attributes to that field, and lists it in violated_fields.
Expected<Generated, GenError> Generate(const testlang::TestlangDoc& doc, const Rng& rng,
                                       testlang::GenMode mode, const GenOptions& options = {});

// fdp-mode counterpart: one producer call per leaf, in field order.
Expected<GeneratedFdp, GenError> GenerateFdpCalls(const testlang::TestlangDoc& doc,
                                                  const Rng& rng, testlang::GenMode mode,
                                                  const GenOptions& options = {});

// A standalone rendering of one record (AST-free mutation fragments).
Expected<Bytes, GenError> GenerateRecord(const testlang::TestlangDoc& doc,
                                         std::string_view record, const Rng& rng,
                                         const GenOptions& options = {});

// Serializes an AST whose root is the entry record. Unpinned size fields
// are backpatched to the measured length of the content they size; spans
// and constraint flags are recomputed.
Bytes Render(const testlang::TestlangDoc& doc, testlang::AstNode& root);

}  // namespace testforge::serializer

#endif  // TESTFORGE_SERIALIZER_GENERATE_H_
