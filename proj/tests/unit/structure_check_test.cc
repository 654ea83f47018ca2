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

#include <gtest/gtest.h>

#include "support/test_util.h"
#include "testforge/testlang/ast.h"
#include "testforge/testlang/structure_check.h"

namespace testforge::testlang {
namespace {

using test_support::LoadDataDoc;

Bytes B(std::string_view s) { return ToBytes(s); }

bool Has(const Mismatch& m, MismatchCode code, std::string_view field) {
  for (const auto& v : m.violations) {
    if (v.code == code && v.field == field) return true;
  }
  return false;
}

TEST(StructureCheckTest, ParsesSimpleBlob) {
  auto ast = StructureCheck(LoadDataDoc("simple.json"), B(std::string("\x00\x03" "abc", 5)));
  ASSERT_TRUE(ast);
  const AstNode* table = FindNode(ast->root, "INPUT.lookup.table");
  ASSERT_NE(table, nullptr);
  EXPECT_EQ(table->content, B("abc"));
  EXPECT_EQ(table->span.offset, 2u);
  EXPECT_EQ(table->span.length, 3u);
  EXPECT_EQ(FindNode(ast->root, "INPUT.lookup.table_size")->int_value, 3);
  EXPECT_EQ(ast->doc_id, DocId(LoadDataDoc("simple.json")));
}

TEST(StructureCheckTest, EmptyBlobUnderflowsFirstField) {
  auto r = StructureCheck(LoadDataDoc("simple.json"), {});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().code(), MismatchCode::kUnderflow);
  EXPECT_EQ(r.error().field(), "INPUT.lookup.table_size");
}

TEST(StructureCheckTest, TruncatedBlobReportsUnderflowOnTheSize) {
  auto r = StructureCheck(LoadDataDoc("simple.json"), B(std::string("\x00\x04" "abc", 5)));
  ASSERT_FALSE(r);
  EXPECT_TRUE(Has(r.error(), MismatchCode::kUnderflow, "INPUT.lookup.table_size"));
  EXPECT_TRUE(Has(r.error(), MismatchCode::kSizeRefMismatch, "INPUT.lookup.table_size"));
  EXPECT_TRUE(r.error().OnlyField("INPUT.lookup.table_size"));
}

TEST(StructureCheckTest, ShortSizeIsSizeRefMismatch) {
  auto r = StructureCheck(LoadDataDoc("simple.json"), B(std::string("\x00\x02" "abc", 5)));
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().code(), MismatchCode::kSizeRefMismatch);
  EXPECT_EQ(r.error().field(), "INPUT.lookup.table_size");
}

TEST(StructureCheckTest, ConstraintViolationsAreListed) {
  // table_size 65 is outside [0, 64] but the parse is structurally complete.
  std::string blob("\x00\x41", 2);
  blob += std::string(65, 'x');
  auto r = StructureCheck(LoadDataDoc("simple.json"), B(blob));
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().code(), MismatchCode::kConstraintViolated);
  EXPECT_TRUE(r.error().OnlyField("INPUT.lookup.table_size"));
}

TEST(StructureCheckTest, TrailingBytesOnFixedLayout) {
  TestlangDoc doc = test_support::ParseOrThrow(
      R"({"records": [{"name": "INPUT", "fields": [{"name": "a", "type": "int", "width": 16}]}]})");
  auto r = StructureCheck(doc, B("abc"));
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().code(), MismatchCode::kTrailingBytes);
  EXPECT_EQ(r.error().field(), "INPUT");
}

TEST(StructureCheckTest, ArrayPathsAndLittleEndian) {
  // magic, count=2, two items: (tag 1, len 1 LE, "A"), (tag 7, len 0).
  std::string blob = "TLV1";
  blob += std::string("\x02\x01\x01\x00" "A" "\x07\x00\x00", 8);
  auto ast = StructureCheck(LoadDataDoc("golden/03_tlv.json"), B(blob));
  ASSERT_TRUE(ast) << ast.error().field();
  const AstNode* second = FindNode(ast->root, "INPUT.items[1].tag");
  ASSERT_NE(second, nullptr);
  EXPECT_EQ(second->int_value, 7);
  EXPECT_EQ(FindNode(ast->root, "INPUT.items[0].value")->content, B("A"));
}

TEST(StructureCheckTest, TerminatorMissing) {
  auto r = StructureCheck(LoadDataDoc("golden/10_terminated.json"), B("k=v"));
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().code(), MismatchCode::kTerminatorMissing);
  EXPECT_EQ(r.error().field(), "INPUT.value");
}

TEST(StructureCheckTest, EncodedContentDecodes) {
  // kind 2, payload_len 4 (hex of 2 raw bytes), payload "6869", note "aGk=".
  std::string blob("\x02\x00\x04" "6869" "aGk=", 11);
  auto ast = StructureCheck(LoadDataDoc("golden/07_encoded.json"), B(blob));
  ASSERT_TRUE(ast) << ast.error().field();
  EXPECT_EQ(FindNode(ast->root, "INPUT.payload")->content, B("hi"));
  EXPECT_EQ(FindNode(ast->root, "INPUT.note")->content, B("hi"));
}

TEST(StructureCheckTest, BadEncodingIsDecodeFailed) {
  // No payload length makes both encodings decode.
  std::string blob("\x02\x00\x04" "zz69!", 8);
  auto r = StructureCheck(LoadDataDoc("golden/07_encoded.json"), B(blob));
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().code(), MismatchCode::kDecodeFailed);
}

TEST(StructureCheckTest, FdpDocumentIsUnsupported) {
  auto r = StructureCheck(LoadDataDoc("fdp_example.json"), B("x"));
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().code(), MismatchCode::kUnsupportedMode);
}

TEST(AstTest, TextRoundTrip) {
  auto ast = StructureCheck(LoadDataDoc("golden/03_tlv.json"),
                            B("TLV1" + std::string("\x01\x03\x02\x00" "ab", 6)));
  ASSERT_TRUE(ast);
  ast->violated_fields = {"INPUT.count"};
  ast->mode_used = GenMode::kCrash;
  auto back = AstFromText(AstToText(*ast));
  ASSERT_TRUE(back);
  EXPECT_EQ(*back, *ast);
  EXPECT_FALSE(AstFromText("{\"doc_id\": 1}"));
}

}  // namespace
}  // namespace testforge::testlang
