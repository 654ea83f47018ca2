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

#include "testforge/corpus/corpus.h"

#include <algorithm>
#include <json.hpp>

#include "testforge/common/file.h"
#include "testforge/common/sha256.h"

namespace testforge::corpus {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kTestlangDir = "testlang";
constexpr std::string_view kExternalDir = "external";

fs::path PoolDir(const fs::path& root, Origin o) {
  return root / (o == Origin::kTestlang ? kTestlangDir : kExternalDir);
}

struct Meta {
  Origin origin;
  std::string doc_id;
  Coverage coverage;
  bool crash;
  std::uint64_t created_seq;
};

std::optional<Meta> MetaFromText(std::string_view text, std::string& reason) {
  try {
    Json j = Json::parse(text.begin(), text.end());
    Meta m;
    std::string origin = j.at("origin").get<std::string>();
    if (origin == "testlang") {
      m.origin = Origin::kTestlang;
    } else if (origin == "external") {
      m.origin = Origin::kExternal;
    } else {
      reason = "unknown origin '" + origin + "'";
      return std::nullopt;
    }
    m.doc_id = j.value("doc_id", "");
    for (const Json& line : j.at("coverage")) {
      m.coverage.insert({line.at(0).get<std::string>(), line.at(1).get<std::uint32_t>()});
    }
    m.crash = j.at("crash").get<bool>();
    m.created_seq = j.at("created_seq").get<std::uint64_t>();
    return m;
  } catch (const std::exception& e) {
    reason = e.what();
    return std::nullopt;
  }
}

}  // namespace

std::string_view OriginName(Origin o) { return o == Origin::kTestlang ? "testlang" : "external"; }

std::string_view AddKindName(AddResult::Kind k) {
  switch (k) {
    case AddResult::Kind::kAdded: return "Added";
    case AddResult::Kind::kDuplicateOf: return "DuplicateOf";
    case AddResult::Kind::kNotInteresting: return "NotInteresting";
  }
  return "Unknown";
}

std::string MetaToText(const SeedEntry& e) {
  Json j;
  j["origin"] = OriginName(e.origin);
  if (e.origin == Origin::kTestlang) j["doc_id"] = e.doc_id;
  Json cov = Json::array();
  for (const auto& line : e.coverage) cov.push_back(Json::array({line.path, line.line}));
  j["coverage"] = cov;
  j["crash"] = e.crash;
  j["created_seq"] = e.created_seq;
  return j.dump() + "\n";
}

Expected<AddResult, StorageFailure> Corpus::Add(Bytes bytes, Origin origin,
                                                std::optional<testlang::TestlangAst> ast,
                                                Coverage coverage, bool crash) {
  if ((origin == Origin::kTestlang) != ast.has_value()) {
    return MakeUnexpected(StorageFailure{"", origin == Origin::kTestlang
                                                 ? "testlang seed without an AST"
                                                 : "external seed with an AST"});
  }
  std::string id = Sha256Hex(bytes);
  if (index_.count(id) != 0) return AddResult{AddResult::Kind::kDuplicateOf, id};
  bool novel = std::any_of(coverage.begin(), coverage.end(),
                           [&](const auto& line) { return union_coverage_.count(line) == 0; });
  if (!crash && !novel) return AddResult{AddResult::Kind::kNotInteresting, ""};
  SeedEntry e;
  e.id = id;
  e.bytes = std::move(bytes);
  e.origin = origin;
  if (ast) e.doc_id = ast->doc_id;
  e.ast = std::move(ast);
  e.coverage = std::move(coverage);
  e.crash = crash;
  e.created_seq = next_seq_;
  Insert(std::move(e));
  return AddResult{AddResult::Kind::kAdded, id};
}

void Corpus::Insert(SeedEntry entry) {
  next_seq_ = std::max(next_seq_, entry.created_seq + 1);
  union_coverage_.insert(entry.coverage.begin(), entry.coverage.end());
  index_.emplace(entry.id, entries_.size());
  entries_.push_back(std::move(entry));
}

const SeedEntry* Corpus::Find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

CorpusStats Corpus::Stats() const {
  CorpusStats s;
  for (const SeedEntry& e : entries_) {
    (e.origin == Origin::kTestlang ? s.testlang_entries : s.external_entries)++;
    if (e.crash) ++s.crashes;
  }
  s.union_coverage = union_coverage_.size();
  return s;
}

Expected<void, StorageFailure> Corpus::Persist(const fs::path& dir) const {
  std::error_code ec;
  for (Origin o : {Origin::kTestlang, Origin::kExternal}) {
    fs::create_directories(PoolDir(dir, o), ec);
    if (ec) return MakeUnexpected(StorageFailure{PoolDir(dir, o).string(), ec.message()});
  }
  for (const SeedEntry& e : entries_) {
    fs::path base = PoolDir(dir, e.origin) / e.id;
    auto write = [&](std::string_view ext, std::string_view data) {
      fs::path p = base;
      p += ext;
      return WriteFile(p, data) ? std::optional<StorageFailure>()
                                : StorageFailure{p.string(), "write failed"};
    };
    if (auto err = write(".bin", ToString(e.bytes))) return MakeUnexpected(*err);
    if (e.ast) {
      if (auto err = write(".ast", testlang::AstToText(*e.ast))) return MakeUnexpected(*err);
    }
    // The sidecar goes last: an entry is complete once its .meta exists.
    if (auto err = write(".meta", MetaToText(e))) return MakeUnexpected(*err);
  }
  return {};
}

LoadResult Corpus::Load(const fs::path& dir) {
  LoadResult out;
  std::vector<SeedEntry> loaded;
  std::error_code ec;
  for (Origin o : {Origin::kTestlang, Origin::kExternal}) {
    fs::path pool = PoolDir(dir, o);
    if (!fs::is_directory(pool, ec)) continue;
    std::vector<fs::path> files;
    for (const auto& de : fs::directory_iterator(pool, ec)) files.push_back(de.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& p : files) {
      std::string ext = p.extension().string();
      if (ext == ".meta" || ext == ".ast") {
        fs::path bin = p;
        bin.replace_extension(".bin");
        if (!fs::exists(bin)) out.warnings.push_back(p.string() + ": sidecar without .bin");
        continue;
      }
      if (ext != ".bin") {
        out.warnings.push_back(p.string() + ": unknown file ignored");
        continue;
      }
      auto corrupt = [&](std::string reason) {
        out.corrupt.push_back({p.string(), std::move(reason)});
      };
      auto bytes = ReadFile(p);
      if (!bytes) {
        corrupt("unreadable");
        continue;
      }
      SeedEntry e;
      e.id = p.stem().string();
      e.bytes = ToBytes(*bytes);
      if (Sha256Hex(e.bytes) != e.id) {
        corrupt("content hash does not match the file name");
        continue;
      }
      fs::path meta_path = p;
      meta_path.replace_extension(".meta");
      auto meta_text = ReadFile(meta_path);
      if (!meta_text) {
        corrupt("missing .meta sidecar");
        continue;
      }
      std::string reason;
      auto meta = MetaFromText(*meta_text, reason);
      if (!meta) {
        corrupt("bad .meta: " + reason);
        continue;
      }
      if (meta->origin != o) {
        corrupt("origin does not match the pool directory");
        continue;
      }
      e.origin = meta->origin;
      e.doc_id = meta->doc_id;
      e.coverage = std::move(meta->coverage);
      e.crash = meta->crash;
      e.created_seq = meta->created_seq;
      if (o == Origin::kTestlang) {
        fs::path ast_path = p;
        ast_path.replace_extension(".ast");
        auto ast_text = ReadFile(ast_path);
        if (!ast_text) {
          corrupt("missing .ast sidecar");
          continue;
        }
        auto ast = testlang::AstFromText(*ast_text);
        if (!ast) {
          corrupt("bad .ast: " + ast.error());
          continue;
        }
        e.ast = std::move(*ast);
      }
      loaded.push_back(std::move(e));
    }
  }
  std::sort(loaded.begin(), loaded.end(), [](const SeedEntry& a, const SeedEntry& b) {
    return a.created_seq < b.created_seq;
  });
  for (SeedEntry& e : loaded) out.corpus.Insert(std::move(e));
  return out;
}

}  // namespace testforge::corpus
