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

#ifndef TESTFORGE_CORPUS_CORPUS_H_
#define TESTFORGE_CORPUS_CORPUS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/expected.h"
#include "testforge/testlang/ast.h"
#include "testforge/testlang/doc.h"

namespace testforge::corpus {

using Coverage = std::set<testlang::SourceLine>;

enum class Origin { kTestlang, kExternal };
std::string_view OriginName(Origin o);

struct SeedEntry {
  std::string id;  // SHA-256 of bytes, hex
  Bytes bytes;
  Origin origin = Origin::kExternal;
  std::string doc_id;  // testlang origin only
  std::optional<testlang::TestlangAst> ast;
  Coverage coverage;
  bool crash = false;
  std::uint64_t created_seq = 0;

  bool operator==(const SeedEntry&) const = default;
};

struct AddResult {
  enum class Kind { kAdded, kDuplicateOf, kNotInteresting };
  Kind kind;
  std::string id;  // empty for kNotInteresting
};
std::string_view AddKindName(AddResult::Kind k);

struct StorageFailure {
  std::string path;
  std::string message;
};

struct CorruptEntry {
  std::string path;
  std::string reason;
};

struct CorpusStats {
  std::size_t testlang_entries = 0;
  std::size_t external_entries = 0;
  std::size_t union_coverage = 0;
  std::size_t crashes = 0;
};

struct LoadResult;

// Deduplicated seed store holding the testlang and external pools side by
// side. Admission requires a crash or at least one new covered line.
class Corpus {
 public:
  // Testlang-origin seeds must carry their AST; external seeds must not.
  Expected<AddResult, StorageFailure> Add(Bytes bytes, Origin origin,
                                          std::optional<testlang::TestlangAst> ast,
                                          Coverage coverage, bool crash);

  const std::vector<SeedEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const SeedEntry* Find(std::string_view id) const;
  const Coverage& union_coverage() const { return union_coverage_; }
  CorpusStats Stats() const;

  // Writes every entry under dir; existing files for the same ids are
  // replaced.
  Expected<void, StorageFailure> Persist(const std::filesystem::path& dir) const;
  static LoadResult Load(const std::filesystem::path& dir);

  bool operator==(const Corpus& other) const { return entries_ == other.entries_; }

 private:
  void Insert(SeedEntry entry);

  std::vector<SeedEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
  Coverage union_coverage_;
  std::uint64_t next_seq_ = 0;
};

struct LoadResult {
  Corpus corpus;
  std::vector<CorruptEntry> corrupt;
  std::vector<std::string> warnings;  // unknown files
};

std::string MetaToText(const SeedEntry& e);

}  // namespace testforge::corpus

#endif  // TESTFORGE_CORPUS_CORPUS_H_
