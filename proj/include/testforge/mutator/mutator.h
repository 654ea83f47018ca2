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

#ifndef TESTFORGE_MUTATOR_MUTATOR_H_
#define TESTFORGE_MUTATOR_MUTATOR_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/expected.h"
#include "testforge/common/int128.h"
#include "testforge/common/rng.h"
#include "testforge/mutator/dictionary.h"
#include "testforge/testlang/ast.h"
#include "testforge/testlang/doc.h"

namespace testforge::mutator {

enum class Strategy {
  kBoundaryValue,
  kTypeAware,
  kConstraintViolation,
  kCrossField,
  kAstFree,
  kDictTokenInsert,
  kDictTokenReplace,
  kDictByteReplace,
  kFallbackBitFlip,
  kFallbackByteFlip,
};

inline constexpr std::array<Strategy, 10> kAllStrategies = {
    Strategy::kBoundaryValue,   Strategy::kTypeAware,        Strategy::kConstraintViolation,
    Strategy::kCrossField,      Strategy::kAstFree,          Strategy::kDictTokenInsert,
    Strategy::kDictTokenReplace, Strategy::kDictByteReplace, Strategy::kFallbackBitFlip,
    Strategy::kFallbackByteFlip};

std::string_view StrategyName(Strategy s);
bool IsFallback(Strategy s);
// Operates on the AST (needs an AST-bearing seed).
bool IsStructural(Strategy s);

enum class MutateErrorCode { kStrategyInapplicable, kDictEmpty };

struct MutateError {
  MutateErrorCode code = MutateErrorCode::kStrategyInapplicable;
  std::string message;
};

struct MutatorConfig {
  double fallback_probability = 0.15;
  std::vector<Int128> cross_field_deltas = {-1, 1, 255};
};

struct MutationInput {
  ByteSpan bytes;
  // Present for seeds that came from generation.
  const testlang::TestlangAst* ast = nullptr;
  const testlang::TestlangDoc* doc = nullptr;
  const Dictionary* dict = nullptr;
};

struct Mutation {
  Bytes bytes;
  Strategy strategy = Strategy::kFallbackBitFlip;
  // Set by structural strategies.
  std::optional<testlang::TestlangAst> ast;
};

using MutationResult = Expected<Mutation, MutateError>;

// Strategies the input qualifies for: AST-bearing seeds get everything,
// raw seeds only AST-free, dictionary and fallback mutation. AST-free needs
// a document and Dict* a nonempty dictionary.
std::vector<Strategy> ApplicableStrategies(const MutationInput& in);

// One draw: with probability `fallback_probability` a fallback strategy,
// otherwise a uniform pick among the non-fallback ones (either side
// absorbs the other when empty).
Strategy DrawStrategy(std::span<const Strategy> applicable, double fallback_probability,
                      Rng& rng);

// Applies exactly one strategy. Strategies that turn out inapplicable are
// removed and the draw repeats.
MutationResult Mutate(const MutationInput& in, Rng& rng, const MutatorConfig& config = {});

// Individual operators.
MutationResult BoundaryValue(const testlang::TestlangDoc& doc, const testlang::TestlangAst& ast,
                             Rng& rng);
MutationResult TypeAware(const testlang::TestlangDoc& doc, const testlang::TestlangAst& ast,
                         Rng& rng);
MutationResult ConstraintViolation(const testlang::TestlangDoc& doc,
                                   const testlang::TestlangAst& ast, Rng& rng);
MutationResult CrossField(const testlang::TestlangDoc& doc, const testlang::TestlangAst& ast,
                          Rng& rng, const std::vector<Int128>& deltas = {-1, 1, 255});
MutationResult AstFree(ByteSpan raw, const testlang::TestlangDoc& doc, Rng& rng);
MutationResult DictInsert(ByteSpan raw, const Dictionary& dict, Rng& rng);
MutationResult DictReplaceChunk(ByteSpan raw, const Dictionary& dict, Rng& rng);
MutationResult DictReplaceBytes(ByteSpan raw, const Dictionary& dict, Rng& rng);
MutationResult FallbackBitFlip(ByteSpan raw, Rng& rng);
MutationResult FallbackByteFlip(ByteSpan raw, Rng& rng);

// Boundary menu for an int field: constraint bounds and one step outside
// them, 0, the width maximum and (signed) minimum. Values that do not fit
// the width are dropped.
std::vector<Int128> BoundaryMenu(const testlang::Field& f);

// Payloads TypeAware draws from, by hint ("filename", "query", "url",
// "text"). Empty for unknown hints.
std::span<const std::string_view> HintPayloads(std::string_view hint);

}  // namespace testforge::mutator

#endif  // TESTFORGE_MUTATOR_MUTATOR_H_
