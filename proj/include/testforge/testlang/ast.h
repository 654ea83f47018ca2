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

#ifndef TESTFORGE_TESTLANG_AST_H_
#define TESTFORGE_TESTLANG_AST_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/expected.h"
#include "testforge/common/int128.h"
#include "testforge/testlang/doc.h"

namespace testforge::testlang {

enum class GenMode { kCoverage, kCrash };
std::string_view GenModeName(GenMode m);

struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
  bool operator==(const Span&) const = default;
};

// Concrete value tree. Shape mirrors the record tree: record nodes hold one
// child per field, array nodes one child per element.
struct AstNode {
  std::string name;
  // Dotted path from the entry record, e.g. "INPUT.lookup.table" or
  // "INPUT.items[2].tag".
  std::string path;
  FieldKind kind = FieldKind::kRecordRef;
  // int leaves.
  Int128 int_value = 0;
  // bytes/string/custom leaves: content before encoder and terminator.
  Bytes content;
  // Byte span on the wire (bytes mode); leaves partition the blob.
  Span span;
  bool constraint_satisfied = true;
  // The int value was set on purpose and must survive re-rendering (size
  // fields are otherwise backpatched).
  bool pinned = false;
  // fdp mode: index of the producer call emitted for this leaf.
  std::optional<std::size_t> fdp_call;
  std::vector<AstNode> children;

  bool IsLeaf() const {
    return kind != FieldKind::kRecordRef && kind != FieldKind::kArray;
  }
  bool operator==(const AstNode&) const = default;
};

struct TestlangAst {
  AstNode root;
  std::string doc_id;
  GenMode mode_used = GenMode::kCoverage;
  std::vector<std::string> violated_fields;
  bool operator==(const TestlangAst&) const = default;
};

const AstNode* FindNode(const AstNode& root, std::string_view path);
AstNode* FindNode(AstNode& root, std::string_view path);
// Leaves in wire order.
std::vector<const AstNode*> Leaves(const AstNode& root);

std::string AstToText(const TestlangAst& ast);
Expected<TestlangAst, std::string> AstFromText(std::string_view text);

}  // namespace testforge::testlang

#endif  // TESTFORGE_TESTLANG_AST_H_
