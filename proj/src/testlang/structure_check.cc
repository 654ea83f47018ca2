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

#include "testforge/testlang/structure_check.h"

#include <algorithm>
#include <map>

#include "testforge/testlang/layout.h"
#include "testforge/testlang/parse.h"
#include "testforge/testlang/transforms.h"

namespace testforge::testlang {

namespace {

// Cap on the bytes a repair search will scan past a size-reference site.
constexpr std::size_t kMaxRepairWindow = 4096;
constexpr std::uint64_t kMaxElements = 1 << 20;

// A place where a size field's value decided how much to consume.
struct Site {
  std::string size_field;
  std::string sized_field;
  std::size_t offset = 0;
  std::size_t region_end = 0;
  std::uint64_t used = 0;
};

class Checker {
 public:
  Checker(const TestlangDoc& doc, ByteSpan blob,
          std::map<std::size_t, std::uint64_t> overrides = {})
      : doc_(doc), blob_(blob), overrides_(std::move(overrides)) {}

  // Returns false on a structural failure (see structural()).
  bool Run(AstNode& root) {
    const Record* entry = doc_.Entry();
    root.name = std::string(kEntryRecord);
    root.path = std::string(kEntryRecord);
    root.kind = FieldKind::kRecordRef;
    if (!ParseRecord(*entry, root, blob_.size(), /*tail=*/true)) return false;
    if (pos_ != blob_.size()) {
      return Fail(MismatchCode::kTrailingBytes, root.path,
                  std::to_string(blob_.size() - pos_) + " bytes after the entry record");
    }
    return true;
  }

  const std::vector<Site>& sites() const { return sites_; }
  const std::vector<FieldViolation>& violations() const { return violations_; }
  const FieldViolation& structural() const { return structural_; }

 private:
  using Scope = std::map<std::string, Int128>;

  bool Fail(MismatchCode code, const std::string& field, std::string message) {
    structural_ = {code, field, pos_, std::move(message)};
    return false;
  }

  void Violate(const std::string& field, std::size_t offset, std::string message) {
    violations_.push_back({MismatchCode::kConstraintViolated, field, offset, std::move(message)});
  }

  bool ParseRecord(const Record& rec, AstNode& node, std::size_t end, bool tail) {
    std::size_t start = pos_;
    Scope scope;
    for (std::size_t i = 0; i < rec.fields.size(); ++i) {
      const Field& f = rec.fields[i];
      AstNode child;
      child.name = f.name;
      child.path = node.path + "." + f.name;
      bool field_tail = tail && i + 1 == rec.fields.size();
      bool ok = ParseField(f, child, end, field_tail, scope);
      node.children.push_back(std::move(child));
      if (!ok) return false;
    }
    node.span = {start, pos_ - start};
    return true;
  }

  // Resolves a Ref size to the length to consume, registering a site.
  std::optional<std::uint64_t> ResolveRef(const SizeRef& ref, const AstNode& node,
                                          std::size_t end, const Scope& scope) {
    auto it = scope.find(ref.field);
    std::string size_path = node.path.substr(0, node.path.rfind('.') + 1) + ref.field;
    if (it == scope.end() || it->second < 0) {
      Fail(MismatchCode::kUnderflow, node.path, "size field holds a negative length");
      return std::nullopt;
    }
    std::size_t ordinal = sites_.size();
    auto forced = overrides_.find(ordinal);
    std::uint64_t used = forced != overrides_.end()
                             ? forced->second
                             : static_cast<std::uint64_t>(std::min<Int128>(it->second, UINT64_MAX));
    sites_.push_back({size_path, node.path, pos_, end, used});
    return used;
  }

  bool ParseField(const Field& f, AstNode& node, std::size_t end, bool tail, Scope& scope) {
    node.kind = f.kind;
    switch (f.kind) {
      case FieldKind::kInt: return ParseInt(f, node, end, scope);
      case FieldKind::kRecordRef: {
        node.kind = FieldKind::kRecordRef;
        return ParseRecord(*doc_.FindRecord(f.record), node, end, tail);
      }
      case FieldKind::kArray: return ParseArray(f, node, end, scope);
      default: return ParseLeaf(f, node, end, scope);
    }
  }

  bool ParseInt(const Field& f, AstNode& node, std::size_t end, Scope& scope) {
    std::size_t n = static_cast<std::size_t>(f.width / 8);
    if (end - pos_ < n) {
      return Fail(MismatchCode::kUnderflow, node.path,
                  "needs " + std::to_string(n) + " bytes, " + std::to_string(end - pos_) + " left");
    }
    node.int_value = DecodeInt(blob_.subspan(pos_, n), f.is_signed, doc_.EndianOf(f));
    node.span = {pos_, n};
    node.constraint_satisfied = IntSatisfies(f.constraint, node.int_value);
    if (!node.constraint_satisfied) {
      Violate(node.path, pos_, "value " + Int128ToString(node.int_value) + " outside constraint");
    }
    scope[f.name] = node.int_value;
    pos_ += n;
    return true;
  }

  bool ParseLeaf(const Field& f, AstNode& node, std::size_t end, Scope& scope) {
    std::size_t start = pos_;
    const auto* term = std::get_if<Terminator>(&f.constraint);
    std::optional<std::uint64_t> wire_len;
    std::optional<std::uint64_t> raw_expected;
    if (const auto* fixed = std::get_if<SizeFixed>(&f.size)) {
      wire_len = WireLength(f, fixed->n);
      raw_expected = fixed->n;
    } else if (const auto* ref = std::get_if<SizeRef>(&f.size)) {
      wire_len = ResolveRef(*ref, node, end, scope);
      if (!wire_len) return false;
    } else if (term == nullptr) {
      wire_len = end - pos_;  // open length, tail position
    }

    Bytes wire;
    if (wire_len) {
      if (*wire_len > end - pos_) {
        return Fail(MismatchCode::kUnderflow, node.path,
                    "needs " + std::to_string(*wire_len) + " bytes, " +
                        std::to_string(end - pos_) + " left");
      }
      wire.assign(blob_.begin() + pos_, blob_.begin() + pos_ + *wire_len);
      pos_ += *wire_len;
      if (term != nullptr) {
        const Bytes& seq = term->sequence;
        if (end - pos_ < seq.size() ||
            !std::equal(seq.begin(), seq.end(), blob_.begin() + pos_)) {
          return Fail(MismatchCode::kTerminatorMissing, node.path, "terminator not found after content");
        }
        pos_ += seq.size();
      }
    } else {
      auto found = FindSubsequence(blob_.first(end), term->sequence, pos_);
      if (!found) {
        return Fail(MismatchCode::kTerminatorMissing, node.path, "terminator not found");
      }
      wire.assign(blob_.begin() + pos_, blob_.begin() + *found);
      pos_ = *found + term->sequence.size();
    }

    if (f.encoder) {
      auto raw = InvertEncoder(*f.encoder, wire);
      if (!raw) {
        pos_ = start;
        return Fail(MismatchCode::kDecodeFailed, node.path, "content is not valid " + *f.encoder);
      }
      node.content = std::move(*raw);
    } else {
      node.content = std::move(wire);
    }
    node.span = {start, pos_ - start};

    bool ok = BytesSatisfies(f.constraint, node.content);
    if (raw_expected && node.content.size() != *raw_expected) ok = false;
    if (const auto* range = std::get_if<SizeRange>(&f.size)) {
      ok = ok && node.content.size() >= range->min && node.content.size() <= range->max;
    }
    node.constraint_satisfied = ok;
    if (!ok) Violate(node.path, start, "content outside constraint");
    return true;
  }

  bool ParseArray(const Field& f, AstNode& node, std::size_t end, Scope& scope) {
    std::size_t start = pos_;
    std::optional<std::uint64_t> count;
    std::uint64_t max_count = kMaxElements;
    std::uint64_t min_count = 0;
    if (const auto* fixed = std::get_if<SizeFixed>(&f.size)) {
      count = fixed->n;
    } else if (const auto* ref = std::get_if<SizeRef>(&f.size)) {
      count = ResolveRef(*ref, node, end, scope);
      if (!count) return false;
    } else if (const auto* range = std::get_if<SizeRange>(&f.size)) {
      max_count = range->max;
      min_count = range->min;
    }
    if (count && *count > kMaxElements) {
      return Fail(MismatchCode::kUnderflow, node.path, "element count exceeds the input");
    }
    const Field& element = *f.element;
    std::uint64_t limit = count.value_or(max_count);
    for (std::uint64_t i = 0; i < limit; ++i) {
      if (!count && pos_ >= end) break;
      AstNode child;
      child.name = "[" + std::to_string(i) + "]";
      child.path = node.path + child.name;
      Scope element_scope;
      std::size_t before = pos_;
      bool ok = ParseField(element, child, end, /*tail=*/false, element_scope);
      node.children.push_back(std::move(child));
      if (!ok) return false;
      if (!count && pos_ == before) break;
    }
    node.span = {start, pos_ - start};
    if (!count && node.children.size() < min_count) {
      node.constraint_satisfied = false;
      Violate(node.path, start, "fewer elements than the declared minimum");
    }
    return true;
  }

  const TestlangDoc& doc_;
  ByteSpan blob_;
  std::map<std::size_t, std::uint64_t> overrides_;
  std::size_t pos_ = 0;
  std::vector<Site> sites_;
  std::vector<FieldViolation> violations_;
  FieldViolation structural_;
};

// Looks for one size-reference site whose value, if replaced, makes the
// whole blob parse cleanly. When the site itself ran past the input, the
// underflow is kept as a second finding on the same size field.
std::optional<Mismatch> RepairSizeRef(const TestlangDoc& doc, ByteSpan blob,
                                      const std::vector<Site>& sites,
                                      const FieldViolation& failure) {
  for (std::size_t k = sites.size(); k-- > 0;) {
    const Site& site = sites[k];
    std::size_t window = site.region_end - site.offset;
    if (window > kMaxRepairWindow) continue;
    for (std::uint64_t v = 0; v <= window; ++v) {
      if (v == site.used) continue;
      Checker retry(doc, blob, {{k, v}});
      AstNode root;
      if (!retry.Run(root)) continue;
      bool clean = std::all_of(retry.violations().begin(), retry.violations().end(),
                               [&](const FieldViolation& fv) { return fv.field == site.size_field; });
      if (!clean) continue;
      Mismatch m;
      m.violations.push_back({MismatchCode::kSizeRefMismatch, site.size_field, site.offset,
                              "size says " + std::to_string(site.used) +
                                  ", content parses with " + std::to_string(v)});
      if (failure.code == MismatchCode::kUnderflow && failure.field == site.sized_field &&
          failure.offset == site.offset) {
        m.violations.push_back({MismatchCode::kUnderflow, site.size_field, site.offset,
                                "size runs past the end of the input"});
      }
      return m;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view MismatchCodeName(MismatchCode code) {
  switch (code) {
    case MismatchCode::kTrailingBytes: return "TrailingBytes";
    case MismatchCode::kSizeRefMismatch: return "SizeRefMismatch";
    case MismatchCode::kConstraintViolated: return "ConstraintViolated";
    case MismatchCode::kUnderflow: return "Underflow";
    case MismatchCode::kTerminatorMissing: return "TerminatorMissing";
    case MismatchCode::kDecodeFailed: return "DecodeFailed";
    case MismatchCode::kUnsupportedMode: return "UnsupportedMode";
  }
  return "Unknown";
}

bool Mismatch::OnlyField(std::string_view path) const {
  return std::all_of(violations.begin(), violations.end(),
                     [&](const FieldViolation& v) { return v.field == path; });
}

Expected<TestlangAst, Mismatch> StructureCheck(const TestlangDoc& doc, ByteSpan blob) {
  if (doc.mode != DocMode::kBytes || doc.Entry() == nullptr) {
    return MakeUnexpected(Mismatch{{{MismatchCode::kUnsupportedMode, "", 0,
                                     "structure check needs a complete bytes-mode document"}}});
  }
  Checker checker(doc, blob);
  TestlangAst ast;
  if (!checker.Run(ast.root)) {
    if (auto repaired = RepairSizeRef(doc, blob, checker.sites(), checker.structural())) {
      return MakeUnexpected(std::move(*repaired));
    }
    return MakeUnexpected(Mismatch{{checker.structural()}});
  }
  if (!checker.violations().empty()) {
    return MakeUnexpected(Mismatch{checker.violations()});
  }
  ast.doc_id = DocId(doc);
  ast.mode_used = GenMode::kCoverage;
  return ast;
}

}  // namespace testforge::testlang
