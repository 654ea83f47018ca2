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

#include "support/oracles.h"

namespace testforge::test_support {

namespace {

using testlang::AstNode;
using testlang::Field;
using testlang::FieldKind;
using testlang::Record;
using testlang::TestlangDoc;

// Two's complement decode written out by hand.
Int128 DecodeHere(ByteSpan bytes, bool little, bool is_signed) {
  unsigned __int128 v = 0;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    std::uint8_t b = little ? bytes[bytes.size() - 1 - i] : bytes[i];
    v = (v << 8) | b;
  }
  auto result = static_cast<Int128>(v);
  std::size_t bits = bytes.size() * 8;
  if (is_signed && bits > 0 && (v >> (bits - 1)) & 1) result -= static_cast<Int128>(1) << bits;
  return result;
}

void CheckRecord(const TestlangDoc& doc, const Record& rec, const AstNode& node, ByteSpan blob,
                 std::vector<std::string>& out);

void CheckField(const TestlangDoc& doc, const Field& f, const AstNode& node, ByteSpan blob,
                std::vector<std::string>& out) {
  if (f.kind == FieldKind::kRecordRef) {
    if (const Record* r = doc.FindRecord(f.record)) CheckRecord(doc, *r, node, blob, out);
  } else if (f.kind == FieldKind::kArray) {
    for (const AstNode& child : node.children) CheckField(doc, *f.element, child, blob, out);
  }
}

void CheckRecord(const TestlangDoc& doc, const Record& rec, const AstNode& node, ByteSpan blob,
                 std::vector<std::string>& out) {
  for (std::size_t i = 0; i < rec.fields.size() && i < node.children.size(); ++i) {
    const Field& f = rec.fields[i];
    const AstNode& child = node.children[i];
    CheckField(doc, f, child, blob, out);
    const auto* ref = std::get_if<testlang::SizeRef>(&f.size);
    if (ref == nullptr) continue;
    std::size_t k = 0;
    while (k < i && rec.fields[k].name != ref->field) ++k;
    if (k == i) {
      out.push_back(child.path + ": size field missing");
      continue;
    }
    const Field& size_field = rec.fields[k];
    const AstNode& size_node = node.children[k];
    if (size_node.span.offset + size_node.span.length > blob.size()) {
      out.push_back(size_node.path + ": span outside the blob");
      continue;
    }
    bool little = size_field.endian ? *size_field.endian == testlang::Endianness::kLittle
                                    : doc.default_endianness == testlang::Endianness::kLittle;
    Int128 declared = DecodeHere(blob.subspan(size_node.span.offset, size_node.span.length), little,
                                 size_field.is_signed);
    Int128 measured;
    if (f.kind == FieldKind::kArray) {
      measured = static_cast<Int128>(child.children.size());
    } else {
      std::size_t term = 0;
      if (const auto* t = std::get_if<testlang::Terminator>(&f.constraint)) term = t->sequence.size();
      measured = static_cast<Int128>(child.span.length - term);
    }
    if (declared != measured) {
      out.push_back(size_node.path + " holds " + Int128ToString(declared) + " but " + child.path +
                    " measures " + Int128ToString(measured));
    }
  }
}

void CollectLeaves(const AstNode& n, std::vector<const AstNode*>& out) {
  if (n.children.empty()) {
    out.push_back(&n);
    return;
  }
  for (const AstNode& c : n.children) CollectLeaves(c, out);
}

}  // namespace

std::vector<std::string> SizeRefFailures(const TestlangDoc& doc, const testlang::TestlangAst& ast,
                                         ByteSpan blob) {
  std::vector<std::string> out;
  if (const Record* entry = doc.FindRecord("INPUT")) CheckRecord(doc, *entry, ast.root, blob, out);
  return out;
}

std::vector<std::string> SpanFailures(const testlang::TestlangAst& ast, std::size_t blob_size) {
  std::vector<const AstNode*> leaves;
  CollectLeaves(ast.root, leaves);
  std::vector<std::string> out;
  std::size_t cursor = 0;
  for (const AstNode* leaf : leaves) {
    // Empty arrays and records are childless but own no bytes.
    if (leaf->span.length == 0 && (leaf->kind == FieldKind::kArray || leaf->kind == FieldKind::kRecordRef)) {
      continue;
    }
    if (leaf->span.offset != cursor) {
      out.push_back(leaf->path + " starts at " + std::to_string(leaf->span.offset) + ", expected " +
                    std::to_string(cursor));
    }
    cursor = leaf->span.offset + leaf->span.length;
  }
  if (cursor != blob_size) {
    out.push_back("spans end at " + std::to_string(cursor) + " of " + std::to_string(blob_size));
  }
  return out;
}

}  // namespace testforge::test_support
