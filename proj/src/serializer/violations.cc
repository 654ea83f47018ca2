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

#include "testforge/serializer/violations.h"

#include <algorithm>
#include <functional>
#include <utility>

#include "testforge/serializer/generate.h"
#include "testforge/testlang/layout.h"

namespace testforge::serializer {

using testlang::AstNode;
using testlang::Field;
using testlang::FieldKind;
using testlang::Record;
using testlang::TestlangDoc;

namespace {

// Longest content a violation may render.
constexpr std::uint64_t kMaxViolationBytes = 64 * 1024;

using FieldVisitor =
    std::function<void(const Record* rec, const Field& f, const AstNode& node, bool tail)>;

void VisitField(const TestlangDoc& doc, const Record* rec, const Field& f, const AstNode& node,
                bool tail, const FieldVisitor& fn);

void VisitRecord(const TestlangDoc& doc, const Record& rec, const AstNode& node, bool tail,
                 const FieldVisitor& fn) {
  std::size_t n = std::min(rec.fields.size(), node.children.size());
  for (std::size_t i = 0; i < n; ++i) {
    VisitField(doc, &rec, rec.fields[i], node.children[i], tail && i + 1 == rec.fields.size(), fn);
  }
}

void VisitField(const TestlangDoc& doc, const Record* rec, const Field& f, const AstNode& node,
                bool tail, const FieldVisitor& fn) {
  fn(rec, f, node, tail);
  if (f.kind == FieldKind::kRecordRef) {
    if (const Record* next = doc.FindRecord(f.record)) VisitRecord(doc, *next, node, tail, fn);
  } else if (f.kind == FieldKind::kArray) {
    for (const AstNode& child : node.children) VisitField(doc, nullptr, *f.element, child, false, fn);
  }
}

void VisitTree(const TestlangDoc& doc, const AstNode& root, const FieldVisitor& fn) {
  if (const Record* rec = doc.FindRecord(root.name)) VisitRecord(doc, *rec, root, true, fn);
}

std::string SiblingPath(const std::string& path, std::string_view name) {
  return path.substr(0, path.rfind('.') + 1) + std::string(name);
}

std::uint8_t FillerByte(const Field& f) {
  const auto* t = std::get_if<testlang::Terminator>(&f.constraint);
  return t != nullptr && !t->sequence.empty() && t->sequence[0] == 'A' ? 'B' : 'A';
}

// `content` cycled or cut to `length` bytes.
Bytes Resized(const Field& f, const Bytes& content, std::uint64_t length) {
  Bytes out(length, FillerByte(f));
  if (!content.empty()) {
    for (std::uint64_t i = 0; i < length; ++i) out[i] = content[i % content.size()];
  }
  return out;
}

void AddIntEdits(const Field& f, const AstNode& node, std::vector<AstEdit>& out) {
  std::vector<Int128> values;
  if (const auto* r = std::get_if<testlang::IntRange>(&f.constraint)) {
    values = {r->lo - 1, r->hi + 1};
  } else if (const auto* e = std::get_if<testlang::IntEnum>(&f.constraint)) {
    auto [lo, hi] = std::minmax_element(e->values.begin(), e->values.end());
    values = {*lo - 1, *hi + 1};
  } else if (const auto* c = std::get_if<testlang::IntConst>(&f.constraint)) {
    values = {c->value - 1, c->value + 1};
  } else {
    return;
  }
  values.push_back(0);
  values.push_back(MaxForWidth(f.width, f.is_signed));
  if (f.is_signed) values.push_back(MinForWidth(f.width, true));
  std::vector<Int128> seen;
  for (Int128 v : values) {
    if (!FitsWidth(v, f.width, f.is_signed) || testlang::IntSatisfies(f.constraint, v)) continue;
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
    seen.push_back(v);
    out.push_back({node.path, node.path, v, std::nullopt, std::nullopt});
  }
}

void AddSizeEdits(const Field& f, const AstNode& node, std::vector<AstEdit>& out) {
  Int128 length = node.int_value;
  for (Int128 v : {Int128{0}, length + 1, 2 * length}) {
    if (v == length || !FitsWidth(v, f.width, f.is_signed)) continue;
    bool dup = std::any_of(out.begin(), out.end(), [&](const AstEdit& e) {
      return e.path == node.path && e.int_value == v;
    });
    if (!dup) out.push_back({node.path, node.path, v, std::nullopt, std::nullopt});
  }
}

void AddContentEdits(const Record* rec, const Field& f, const AstNode& node, bool tail,
                     std::vector<AstEdit>& out) {
  auto add = [&](Bytes content, const std::string& blamed) {
    out.push_back({node.path, blamed, std::nullopt, std::move(content), std::nullopt});
  };
  if (testlang::HasBytesConstraint(f) && !std::holds_alternative<testlang::Terminator>(f.constraint) &&
      !node.content.empty()) {
    Bytes flipped = node.content;
    flipped[0] ^= 0x01;
    Bytes inverted = node.content;
    inverted.back() ^= 0xFF;
    for (Bytes* b : {&flipped, &inverted}) {
      if (!testlang::BytesSatisfies(f.constraint, *b)) add(*b, node.path);
    }
  }
  const auto* range = std::get_if<testlang::SizeRange>(&f.size);
  if (range != nullptr && tail && testlang::IsOpenLength(f)) {
    std::vector<std::uint64_t> lengths = {range->max + 1, 8 * range->max};
    if (range->min > 0) {
      lengths.push_back(range->min - 1);
      lengths.push_back(0);
    }
    std::vector<std::uint64_t> seen;
    for (std::uint64_t n : lengths) {
      if (n > kMaxViolationBytes || (n >= range->min && n <= range->max)) continue;
      if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
      seen.push_back(n);
      add(Resized(f, node.content, n), node.path);
    }
  }
  const auto* ref = std::get_if<testlang::SizeRef>(&f.size);
  if (ref != nullptr && rec != nullptr) {
    const Field* size_field = testlang::FindField(*rec, ref->field);
    if (size_field != nullptr && testlang::HasIntConstraint(*size_field)) {
      std::uint64_t n = 8 * std::max<std::uint64_t>(node.content.size(), 1);
      Int128 measured = testlang::WireLength(f, n);
      if (n <= kMaxViolationBytes && FitsWidth(measured, size_field->width, size_field->is_signed) &&
          !testlang::IntSatisfies(size_field->constraint, measured)) {
        add(Resized(f, node.content, n), SiblingPath(node.path, ref->field));
      }
    }
  }
}

void AddArrayEdits(const Field& f, const AstNode& node, bool tail, std::vector<AstEdit>& out) {
  const auto* range = std::get_if<testlang::SizeRange>(&f.size);
  if (range == nullptr || !tail || range->min == 0) return;
  if (node.children.size() < range->min) return;
  out.push_back({node.path, node.path, std::nullopt, std::nullopt,
                 static_cast<std::size_t>(range->min - 1)});
}

bool Verifies(const TestlangDoc& doc, const AstEdit& edit, ByteSpan bytes,
              testlang::MismatchCode& code) {
  auto check = testlang::StructureCheck(doc, bytes);
  if (check) return false;
  const testlang::Mismatch& m = check.error();
  if (m.code() != testlang::MismatchCode::kConstraintViolated &&
      m.code() != testlang::MismatchCode::kSizeRefMismatch) {
    return false;
  }
  code = m.code();
  return m.OnlyField(edit.blamed);
}

}  // namespace

std::vector<AstEdit> CrashMenu(const TestlangDoc& doc, const AstNode& root) {
  std::vector<AstEdit> out;
  VisitTree(doc, root, [&](const Record* rec, const Field& f, const AstNode& node, bool tail) {
    switch (f.kind) {
      case FieldKind::kInt:
        if (rec != nullptr && testlang::IsSizeField(*rec, f.name)) {
          AddSizeEdits(f, node, out);
        } else {
          AddIntEdits(f, node, out);
        }
        break;
      case FieldKind::kBytes:
      case FieldKind::kString:
        AddContentEdits(rec, f, node, tail, out);
        break;
      case FieldKind::kArray:
        AddArrayEdits(f, node, tail, out);
        break;
      default:
        break;
    }
  });
  return out;
}

std::vector<AstEdit> SizeDeltaMenu(const TestlangDoc& doc, const AstNode& root,
                                   const std::vector<Int128>& deltas) {
  std::vector<AstEdit> out;
  VisitTree(doc, root, [&](const Record* rec, const Field& f, const AstNode& node, bool) {
    if (f.kind != FieldKind::kInt || rec == nullptr || !testlang::IsSizeField(*rec, f.name)) return;
    for (Int128 d : deltas) {
      Int128 v = node.int_value + d;
      if (FitsWidth(v, f.width, f.is_signed) && v >= 0) {
        out.push_back({node.path, node.path, v, std::nullopt, std::nullopt});
      }
    }
  });
  return out;
}

void ApplyEdit(AstNode& root, const AstEdit& edit) {
  AstNode* node = testlang::FindNode(root, edit.path);
  if (node == nullptr) return;
  if (edit.int_value) {
    node->int_value = *edit.int_value;
    node->pinned = true;
  }
  if (edit.content) node->content = *edit.content;
  if (edit.element_count && *edit.element_count < node->children.size()) {
    node->children.resize(*edit.element_count);
  }
}

std::optional<VerifiedEdit> DrawVerifiedEdit(const TestlangDoc& doc, const AstNode& root,
                                             std::vector<AstEdit> menu, Rng& rng) {
  // Group by field so each field is equally likely regardless of how many
  // values its menu has.
  std::vector<std::pair<std::string, std::vector<AstEdit>>> groups;
  for (AstEdit& e : menu) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == e.path; });
    if (it == groups.end()) {
      groups.push_back({e.path, {}});
      it = groups.end() - 1;
    }
    it->second.push_back(std::move(e));
  }
  while (!groups.empty()) {
    std::size_t gi = rng.Index(groups.size());
    auto& edits = groups[gi].second;
    std::size_t ei = rng.Index(edits.size());
    AstEdit edit = std::move(edits[ei]);
    edits.erase(edits.begin() + static_cast<std::ptrdiff_t>(ei));
    if (edits.empty()) groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(gi));

    VerifiedEdit candidate{root, {}, edit};
    ApplyEdit(candidate.root, edit);
    candidate.bytes = Render(doc, candidate.root);
    if (Verifies(doc, edit, candidate.bytes, candidate.code)) return candidate;
  }
  return std::nullopt;
}

}  // namespace testforge::serializer
