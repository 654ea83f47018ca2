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

#include <filesystem>
#include <fstream>

#include "support/test_util.h"
#include "testforge/common/sha256.h"
#include "testforge/corpus/corpus.h"
#include "testforge/serializer/generate.h"

namespace testforge::corpus {
namespace {

namespace fs = std::filesystem;
using test_support::TempDir;

Coverage Lines(std::initializer_list<int> lines) {
  Coverage c;
  for (int l : lines) c.insert({"t.c", static_cast<std::uint32_t>(l)});
  return c;
}

Corpus Sample() {
  auto doc = test_support::LoadDataDoc("golden/03_tlv.json");
  Corpus c;
  for (std::uint64_t s = 0; s < 3; ++s) {
    auto g = serializer::Generate(doc, Rng(s), testlang::GenMode::kCoverage);
    auto r = c.Add(g->bytes, Origin::kTestlang, g->ast, Lines({static_cast<int>(s) + 1, 100}), false);
    if (!r || r->kind != AddResult::Kind::kAdded) throw std::runtime_error("sample add failed");
  }
  c.Add(ToBytes("external seed"), Origin::kExternal, std::nullopt, Lines({50}), true);
  c.Add(ToBytes("another"), Origin::kExternal, std::nullopt, Lines({51, 52}), false);
  return c;
}

TEST(CorpusTest, AddDuplicateAndGate) {
  Corpus c;
  auto a = c.Add(ToBytes("x"), Origin::kExternal, std::nullopt, Lines({1, 2}), false);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->kind, AddResult::Kind::kAdded);
  EXPECT_EQ(a->id, Sha256Hex(ToBytes("x")));

  auto dup = c.Add(ToBytes("x"), Origin::kExternal, std::nullopt, Lines({7}), true);
  EXPECT_EQ(dup->kind, AddResult::Kind::kDuplicateOf);
  EXPECT_EQ(dup->id, a->id);

  auto subset = c.Add(ToBytes("y"), Origin::kExternal, std::nullopt, Lines({1}), false);
  EXPECT_EQ(subset->kind, AddResult::Kind::kNotInteresting);
  EXPECT_TRUE(subset->id.empty());

  auto crash = c.Add(ToBytes("z"), Origin::kExternal, std::nullopt, Lines({1}), true);
  EXPECT_EQ(crash->kind, AddResult::Kind::kAdded);

  auto fresh = c.Add(ToBytes("w"), Origin::kExternal, std::nullopt, Lines({1, 3}), false);
  EXPECT_EQ(fresh->kind, AddResult::Kind::kAdded);
  EXPECT_EQ(c.size(), 3u);
  EXPECT_EQ(c.union_coverage(), Lines({1, 2, 3}));
  EXPECT_EQ(c.entries()[2].created_seq, 2u);
}

TEST(CorpusTest, UnionCoverageIsTheUnionOfEntries) {
  Corpus c = Sample();
  Coverage u;
  for (const auto& e : c.entries()) u.insert(e.coverage.begin(), e.coverage.end());
  EXPECT_EQ(c.union_coverage(), u);
  auto s = c.Stats();
  EXPECT_EQ(s.testlang_entries, 3u);
  EXPECT_EQ(s.external_entries, 2u);
  EXPECT_EQ(s.crashes, 1u);
  EXPECT_EQ(s.union_coverage, u.size());
}

TEST(CorpusTest, PoolSeparationIsEnforced) {
  Corpus c;
  EXPECT_FALSE(c.Add(ToBytes("a"), Origin::kTestlang, std::nullopt, Lines({1}), false));
  EXPECT_FALSE(c.Add(ToBytes("a"), Origin::kExternal, testlang::TestlangAst{}, Lines({1}), false));
}

TEST(CorpusTest, PersistLoadRoundTrip) {
  TempDir dir;
  Corpus c = Sample();
  ASSERT_TRUE(c.Persist(dir.path()));
  auto loaded = Corpus::Load(dir.path());
  EXPECT_TRUE(loaded.corrupt.empty());
  EXPECT_TRUE(loaded.warnings.empty());
  EXPECT_EQ(loaded.corpus, c);
  EXPECT_EQ(loaded.corpus.union_coverage(), c.union_coverage());
  ASSERT_TRUE(loaded.corpus.entries()[0].ast);
  EXPECT_EQ(*loaded.corpus.entries()[0].ast, *c.entries()[0].ast);
  // Layout contract.
  const auto& e = c.entries()[0];
  EXPECT_TRUE(fs::exists(dir.path() / "testlang" / (e.id + ".bin")));
  EXPECT_TRUE(fs::exists(dir.path() / "testlang" / (e.id + ".meta")));
  EXPECT_TRUE(fs::exists(dir.path() / "testlang" / (e.id + ".ast")));
  EXPECT_FALSE(fs::exists(dir.path() / "external" / (c.entries()[3].id + ".ast")));
}

TEST(CorpusTest, TruncatedMetaIsReportedAndSkipped) {
  TempDir dir;
  Corpus c = Sample();
  ASSERT_TRUE(c.Persist(dir.path()));
  const auto& victim = c.entries()[1];
  fs::path meta = dir.path() / "testlang" / (victim.id + ".meta");
  auto text = *ReadFile(meta);
  ASSERT_TRUE(WriteFile(meta, text.substr(0, text.size() / 2)));

  auto loaded = Corpus::Load(dir.path());
  ASSERT_EQ(loaded.corrupt.size(), 1u);
  EXPECT_NE(loaded.corrupt[0].path.find(victim.id), std::string::npos);
  EXPECT_EQ(loaded.corpus.size(), c.size() - 1);
  EXPECT_EQ(loaded.corpus.Find(victim.id), nullptr);
  for (const auto& e : c.entries()) {
    if (e.id == victim.id) continue;
    ASSERT_NE(loaded.corpus.Find(e.id), nullptr);
    EXPECT_EQ(*loaded.corpus.Find(e.id), e);
  }
}

TEST(CorpusTest, TamperedBytesAreCorrupt) {
  TempDir dir;
  Corpus c = Sample();
  ASSERT_TRUE(c.Persist(dir.path()));
  const auto& victim = c.entries()[3];
  ASSERT_TRUE(WriteFile(dir.path() / "external" / (victim.id + ".bin"), "tampered"));
  auto loaded = Corpus::Load(dir.path());
  ASSERT_EQ(loaded.corrupt.size(), 1u);
  EXPECT_EQ(loaded.corpus.size(), c.size() - 1);
}

TEST(CorpusTest, EmptyAndMissingDirectories) {
  TempDir dir;
  auto loaded = Corpus::Load(dir.path());
  EXPECT_TRUE(loaded.corpus.empty());
  EXPECT_TRUE(loaded.corrupt.empty());
  EXPECT_TRUE(Corpus::Load(dir.path() / "missing").corpus.empty());
}

TEST(CorpusTest, UnknownFilesWarn) {
  TempDir dir;
  Corpus c = Sample();
  ASSERT_TRUE(c.Persist(dir.path()));
  ASSERT_TRUE(WriteFile(dir.path() / "external" / "README.txt", "hello"));
  auto loaded = Corpus::Load(dir.path());
  EXPECT_EQ(loaded.warnings.size(), 1u);
  EXPECT_EQ(loaded.corpus, c);
}

TEST(CorpusTest, LoadedCorpusKeepsNumbering) {
  TempDir dir;
  Corpus c = Sample();
  ASSERT_TRUE(c.Persist(dir.path()));
  auto loaded = Corpus::Load(dir.path());
  auto r = loaded.corpus.Add(ToBytes("later"), Origin::kExternal, std::nullopt, Lines({999}), false);
  ASSERT_TRUE(r);
  EXPECT_EQ(loaded.corpus.entries().back().created_seq, c.size());
}

}  // namespace
}  // namespace testforge::corpus
