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

#include "testforge/mutator/mutator.h"

#include <algorithm>

#include "testforge/serializer/generate.h"
#include "testforge/serializer/violations.h"
#include "testforge/testlang/layout.h"

namespace testforge::mutator {

using testlang::AstNode;
using testlang::Field;
using testlang::FieldKind;
using testlang::Record;
using testlang::TestlangAst;
using testlang::TestlangDoc;

namespace {

constexpr std::string_view kFilenamePayloads[] = {
    "../../../../../../etc/passwd",
    "../../../../../../../../etc/shadow",
    "..\\../..\\../..\\../windows/win.ini",
    "....//....//....//etc/hosts",
    "/var/www/../../proc/self/environ",
    "../%2e%2e/%2e%2e/etc/passwd",
    "uploads/../../../../root/.ssh/id_rsa",
    "../",
};

// Each query payload leaves its quotes unbalanced.
constexpr std::string_view kQueryPayloads[] = {
    "' OR 1=1 --",
    "admin'--",
    "1' UNION SELECT NULL--",
    "\"; DROP TABLE users; --",
    "' OR '1'='1'--",
    "x' AND SLEEP(5)#",
    "')) OR 1=1 --",
    "'",
};

constexpr std::string_view kUrlPayloads[] = {
    "file:///etc/passwd",
    "javascript:alert(1)",
    "gopher://127.0.0.1:6379/_INFO",
    "http://169.254.169.254/latest/meta-data/",
    "data:text/html,<script>alert(1)</script>",
    "jar:http://127.0.0.1/a.jar!/",
    "ldap://127.0.0.1:1389/a",
    "http://[::1]:80/",
};

constexpr std::string_view kTextPayloads[] = {
    "%s%s%s%s",
    "%n%n%n%n",
    "%x%x%x%x%x%x%x%x",
    "${jndi:ldap://127.0.0.1/a}",
    "{{7*7}}",
    "<script>alert(1)</script>",
    "\xef\xbb\xbf\xff\xfe",
    "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA",
};

MutateError Inapplicable(std::string message) {
  return {MutateErrorCode::kStrategyInapplicable, std::move(message)};
}

// Leaf nodes paired with their field definitions.
struct LeafRef {
  const Record* rec;
  const Field* field;
  std::string path;
  bool tail;
};

void CollectLeaves(const TestlangDoc& doc, const Record* rec, const Field& f, const AstNode& node,
                   bool tail, std::vector<LeafRef>& out) {
  if (f.kind == FieldKind::kRecordRef) {
    const Record* next = doc.FindRecord(f.record);
    if (next == nullptr) return;
    std::size_t n = std::min(next->fields.size(), node.children.size());
    for (std::size_t i = 0; i < n; ++i) {
      CollectLeaves(doc, next, next->fields[i], node.children[i],
                    tail && i + 1 == next->fields.size(), out);
    }
  } else if (f.kind == FieldKind::kArray) {
    for (const AstNode& child : node.children) CollectLeaves(doc, nullptr, *f.element, child, false, out);
  } else {
    out.push_back({rec, &f, node.path, tail});
  }
}

std::vector<LeafRef> LeavesOf(const TestlangDoc& doc, const AstNode& root) {
  std::vector<LeafRef> out;
  const Record* entry = doc.FindRecord(root.name);
  if (entry == nullptr) return out;
  std::size_t n = std::min(entry->fields.size(), root.children.size());
  for (std::size_t i = 0; i < n; ++i) {
    CollectLeaves(doc, entry, entry->fields[i], root.children[i], i + 1 == entry->fields.size(), out);
  }
  return out;
}

Mutation Rerender(const TestlangDoc& doc, const TestlangAst& base, AstNode root, Strategy s) {
  Mutation m;
  m.strategy = s;
  m.ast = base;
  m.ast->root = std::move(root);
  m.ast->violated_fields.clear();
  m.bytes = serializer::Render(doc, m.ast->root);
  return m;
}

// Whether a content of this length still fits the field's declared size.
bool LengthFits(const LeafRef& leaf, std::uint64_t raw_length) {
  const Field& f = *leaf.field;
  if (const auto* fixed = std::get_if<testlang::SizeFixed>(&f.size)) return raw_length == fixed->n;
  if (const auto* range = std::get_if<testlang::SizeRange>(&f.size)) {
    return raw_length >= range->min && raw_length <= range->max;
  }
  if (const auto* ref = std::get_if<testlang::SizeRef>(&f.size)) {
    const Field* size_field = leaf.rec != nullptr ? testlang::FindField(*leaf.rec, ref->field) : nullptr;
    return size_field != nullptr &&
           FitsWidth(testlang::WireLength(f, raw_length), size_field->width, size_field->is_signed);
  }
  return true;
}

MutationResult FromEdit(const TestlangDoc& doc, const TestlangAst& ast,
                        std::vector<serializer::AstEdit> menu, Rng& rng, Strategy s) {
  if (menu.empty()) return MakeUnexpected(Inapplicable("no field to break"));
  auto verified = serializer::DrawVerifiedEdit(doc, ast.root, std::move(menu), rng);
  if (!verified) return MakeUnexpected(Inapplicable("no edit breaks exactly one field"));
  Mutation m;
  m.strategy = s;
  m.ast = ast;
  m.ast->root = std::move(verified->root);
  m.ast->mode_used = testlang::GenMode::kCrash;
  m.ast->violated_fields = {verified->edit.blamed};
  m.bytes = std::move(verified->bytes);
  return m;
}

Bytes Splice(ByteSpan raw, std::size_t begin, std::size_t end, ByteSpan insert) {
  Bytes out(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(begin));
  out.insert(out.end(), insert.begin(), insert.end());
  out.insert(out.end(), raw.begin() + static_cast<std::ptrdiff_t>(end), raw.end());
  return out;
}

MutationResult Raw(Bytes bytes, Strategy s) {
  Mutation m;
  m.bytes = std::move(bytes);
  m.strategy = s;
  return m;
}

}  // namespace

std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kBoundaryValue: return "BoundaryValue";
    case Strategy::kTypeAware: return "TypeAware";
    case Strategy::kConstraintViolation: return "ConstraintViolation";
    case Strategy::kCrossField: return "CrossField";
    case Strategy::kAstFree: return "AstFree";
    case Strategy::kDictTokenInsert: return "DictTokenInsert";
    case Strategy::kDictTokenReplace: return "DictTokenReplace";
    case Strategy::kDictByteReplace: return "DictByteReplace";
    case Strategy::kFallbackBitFlip: return "FallbackBitFlip";
    case Strategy::kFallbackByteFlip: return "FallbackByteFlip";
  }
  return "Unknown";
}

bool IsFallback(Strategy s) {
  return s == Strategy::kFallbackBitFlip || s == Strategy::kFallbackByteFlip;
}

bool IsStructural(Strategy s) {
  return s == Strategy::kBoundaryValue || s == Strategy::kTypeAware ||
         s == Strategy::kConstraintViolation || s == Strategy::kCrossField;
}

std::span<const std::string_view> HintPayloads(std::string_view hint) {
  if (hint == "filename") return kFilenamePayloads;
  if (hint == "query") return kQueryPayloads;
  if (hint == "url") return kUrlPayloads;
  if (hint == "text") return kTextPayloads;
  return {};
}

std::vector<Int128> BoundaryMenu(const Field& f) {
  std::vector<Int128> values;
  if (const auto* r = std::get_if<testlang::IntRange>(&f.constraint)) {
    values = {r->lo, r->hi, r->lo - 1, r->hi + 1};
  } else if (const auto* e = std::get_if<testlang::IntEnum>(&f.constraint)) {
    auto [lo, hi] = std::minmax_element(e->values.begin(), e->values.end());
    values = {*lo, *hi, *lo - 1, *hi + 1};
  } else if (const auto* c = std::get_if<testlang::IntConst>(&f.constraint)) {
    values = {c->value, c->value - 1, c->value + 1};
  }
  values.push_back(0);
  values.push_back(MaxForWidth(f.width, f.is_signed));
  if (f.is_signed) values.push_back(MinForWidth(f.width, true));
  std::vector<Int128> out;
  for (Int128 v : values) {
    if (FitsWidth(v, f.width, f.is_signed) && std::find(out.begin(), out.end(), v) == out.end()) {
      out.push_back(v);
    }
  }
  return out;
}

MutationResult BoundaryValue(const TestlangDoc& doc, const TestlangAst& ast, Rng& rng) {
  std::vector<LeafRef> ints;
  for (LeafRef& leaf : LeavesOf(doc, ast.root)) {
    if (leaf.field->kind != FieldKind::kInt) continue;
    if (leaf.rec != nullptr && testlang::IsSizeField(*leaf.rec, leaf.field->name)) continue;
    ints.push_back(std::move(leaf));
  }
  if (ints.empty()) return MakeUnexpected(Inapplicable("no int field"));
  const LeafRef& pick = ints[rng.Index(ints.size())];
  std::vector<Int128> menu = BoundaryMenu(*pick.field);
  AstNode root = ast.root;
  testlang::FindNode(root, pick.path)->int_value = menu[rng.Index(menu.size())];
  return Rerender(doc, ast, std::move(root), Strategy::kBoundaryValue);
}

MutationResult TypeAware(const TestlangDoc& doc, const TestlangAst& ast, Rng& rng) {
  struct Option {
    std::string path;
    std::string_view payload;
  };
  std::vector<std::vector<Option>> by_field;
  for (const LeafRef& leaf : LeavesOf(doc, ast.root)) {
    const Field& f = *leaf.field;
    if (f.kind == FieldKind::kInt || !f.hint) continue;
    std::vector<Option> options;
    for (std::string_view p : HintPayloads(*f.hint)) {
      Bytes content = ToBytes(p);
      if (!LengthFits(leaf, content.size())) continue;
      if (const auto* t = std::get_if<testlang::Terminator>(&f.constraint);
          t != nullptr && !testlang::BytesSatisfies(f.constraint, content)) {
        continue;
      }
      options.push_back({leaf.path, p});
    }
    if (!options.empty()) by_field.push_back(std::move(options));
  }
  if (by_field.empty()) return MakeUnexpected(Inapplicable("no hinted field takes a payload"));
  const auto& options = by_field[rng.Index(by_field.size())];
  const Option& pick = options[rng.Index(options.size())];
  AstNode root = ast.root;
  testlang::FindNode(root, pick.path)->content = ToBytes(pick.payload);
  return Rerender(doc, ast, std::move(root), Strategy::kTypeAware);
}

MutationResult ConstraintViolation(const TestlangDoc& doc, const TestlangAst& ast, Rng& rng) {
  return FromEdit(doc, ast, serializer::CrashMenu(doc, ast.root), rng,
                  Strategy::kConstraintViolation);
}

MutationResult CrossField(const TestlangDoc& doc, const TestlangAst& ast, Rng& rng,
                          const std::vector<Int128>& deltas) {
  return FromEdit(doc, ast, serializer::SizeDeltaMenu(doc, ast.root, deltas), rng,
                  Strategy::kCrossField);
}

MutationResult AstFree(ByteSpan raw, const TestlangDoc& doc, Rng& rng) {
  std::vector<const Record*> records;
  for (const Record& r : doc.records) {
    if (!r.fields.empty()) records.push_back(&r);
  }
  if (records.empty()) return MakeUnexpected(Inapplicable("document has no fields"));
  const Record* rec = records[rng.Index(records.size())];
  auto fragment = serializer::GenerateRecord(doc, rec->name, rng.Fork("fragment"));
  if (!fragment) return MakeUnexpected(Inapplicable(fragment.error().message));
  if (raw.empty()) return Raw(std::move(*fragment), Strategy::kAstFree);
  std::size_t begin = rng.Index(raw.size() + 1);
  std::size_t end = begin;
  if (rng.Bernoulli(0.5)) end = static_cast<std::size_t>(rng.Uniform(begin, raw.size()));
  return Raw(Splice(raw, begin, end, *fragment), Strategy::kAstFree);
}

MutationResult DictInsert(ByteSpan raw, const Dictionary& dict, Rng& rng) {
  if (dict.empty()) return MakeUnexpected(MutateError{MutateErrorCode::kDictEmpty, "empty dictionary"});
  const Bytes& token = dict.tokens()[rng.Index(dict.size())];
  std::size_t pos = rng.Index(raw.size() + 1);
  return Raw(Splice(raw, pos, pos, token), Strategy::kDictTokenInsert);
}

MutationResult DictReplaceChunk(ByteSpan raw, const Dictionary& dict, Rng& rng) {
  if (dict.empty()) return MakeUnexpected(MutateError{MutateErrorCode::kDictEmpty, "empty dictionary"});
  if (raw.empty()) return MakeUnexpected(Inapplicable("nothing to replace"));
  const Bytes& token = dict.tokens()[rng.Index(dict.size())];
  auto length = static_cast<std::size_t>(rng.Uniform(1, raw.size()));
  std::size_t begin = rng.Index(raw.size() - length + 1);
  return Raw(Splice(raw, begin, begin + length, token), Strategy::kDictTokenReplace);
}

MutationResult DictReplaceBytes(ByteSpan raw, const Dictionary& dict, Rng& rng) {
  if (dict.empty()) return MakeUnexpected(MutateError{MutateErrorCode::kDictEmpty, "empty dictionary"});
  if (raw.empty()) return MakeUnexpected(Inapplicable("nothing to replace"));
  const Bytes& token = dict.tokens()[rng.Index(dict.size())];
  std::size_t max_k = std::min<std::size_t>({8, token.size(), raw.size()});
  auto k = static_cast<std::size_t>(rng.Uniform(1, max_k));
  std::size_t pos = rng.Index(raw.size() - k + 1);
  Bytes out(raw.begin(), raw.end());
  std::copy(token.begin(), token.begin() + static_cast<std::ptrdiff_t>(k),
            out.begin() + static_cast<std::ptrdiff_t>(pos));
  return Raw(std::move(out), Strategy::kDictByteReplace);
}

MutationResult FallbackBitFlip(ByteSpan raw, Rng& rng) {
  if (raw.empty()) return MakeUnexpected(Inapplicable("empty input"));
  Bytes out(raw.begin(), raw.end());
  out[rng.Index(out.size())] ^= static_cast<std::uint8_t>(1u << rng.Index(8));
  return Raw(std::move(out), Strategy::kFallbackBitFlip);
}

MutationResult FallbackByteFlip(ByteSpan raw, Rng& rng) {
  if (raw.empty()) return MakeUnexpected(Inapplicable("empty input"));
  Bytes out(raw.begin(), raw.end());
  out[rng.Index(out.size())] ^= static_cast<std::uint8_t>(rng.Uniform(1, 255));
  return Raw(std::move(out), Strategy::kFallbackByteFlip);
}

std::vector<Strategy> ApplicableStrategies(const MutationInput& in) {
  std::vector<Strategy> out;
  bool structured = in.ast != nullptr && in.doc != nullptr;
  for (Strategy s : kAllStrategies) {
    if (IsStructural(s) && !structured) continue;
    if (s == Strategy::kAstFree && in.doc == nullptr) continue;
    bool dict = s == Strategy::kDictTokenInsert || s == Strategy::kDictTokenReplace ||
                s == Strategy::kDictByteReplace;
    if (dict && (in.dict == nullptr || in.dict->empty())) continue;
    out.push_back(s);
  }
  return out;
}

Strategy DrawStrategy(std::span<const Strategy> applicable, double fallback_probability,
                      Rng& rng) {
  std::vector<Strategy> fallback;
  std::vector<Strategy> primary;
  for (Strategy s : applicable) (IsFallback(s) ? fallback : primary).push_back(s);
  bool use_fallback = primary.empty() || (!fallback.empty() && rng.Bernoulli(fallback_probability));
  const auto& pool = use_fallback ? fallback : primary;
  return pool[rng.Index(pool.size())];
}

MutationResult Mutate(const MutationInput& in, Rng& rng, const MutatorConfig& config) {
  std::vector<Strategy> applicable = ApplicableStrategies(in);
  MutateError last = Inapplicable("no applicable strategy");
  while (!applicable.empty()) {
    Strategy s = DrawStrategy(applicable, config.fallback_probability, rng);
    Rng op_rng = rng.Fork(rng.Next());
    MutationResult r = [&]() -> MutationResult {
      switch (s) {
        case Strategy::kBoundaryValue: return BoundaryValue(*in.doc, *in.ast, op_rng);
        case Strategy::kTypeAware: return TypeAware(*in.doc, *in.ast, op_rng);
        case Strategy::kConstraintViolation: return ConstraintViolation(*in.doc, *in.ast, op_rng);
        case Strategy::kCrossField:
          return CrossField(*in.doc, *in.ast, op_rng, config.cross_field_deltas);
        case Strategy::kAstFree: return AstFree(in.bytes, *in.doc, op_rng);
        case Strategy::kDictTokenInsert: return DictInsert(in.bytes, *in.dict, op_rng);
        case Strategy::kDictTokenReplace: return DictReplaceChunk(in.bytes, *in.dict, op_rng);
        case Strategy::kDictByteReplace: return DictReplaceBytes(in.bytes, *in.dict, op_rng);
        case Strategy::kFallbackBitFlip: return FallbackBitFlip(in.bytes, op_rng);
        case Strategy::kFallbackByteFlip: return FallbackByteFlip(in.bytes, op_rng);
      }
      return MakeUnexpected(Inapplicable("unknown strategy"));
    }();
    if (r) return r;
    last = r.error();
    applicable.erase(std::find(applicable.begin(), applicable.end(), s));
  }
  return MakeUnexpected(last);
}

}  // namespace testforge::mutator
