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

#include "testforge/serializer/generate.h"

#include <algorithm>

#include "testforge/serializer/violations.h"
#include "testforge/testlang/layout.h"
#include "testforge/testlang/parse.h"
#include "testforge/testlang/structure_check.h"
#include "testforge/testlang/transforms.h"

namespace testforge::serializer {

using testlang::AstNode;
using testlang::Field;
using testlang::FieldKind;
using testlang::GenMode;
using testlang::Record;
using testlang::TestlangDoc;

namespace {

GenError Invalid(std::string field, std::string message) {
  return {GenErrorCode::kInvalidDocument, std::move(field), std::move(message)};
}

// Builds the value tree. Size fields get a placeholder that Render()
// backpatches; the content they size draws its length so the patched value
// satisfies the size field's constraint.
class Builder {
 public:
  Builder(const TestlangDoc& doc, const Rng& rng, const GenOptions& options)
      : doc_(doc), rng_(rng), options_(options) {}

  Expected<void, GenError> BuildRecord(const Record& rec, AstNode& node) {
    node.kind = FieldKind::kRecordRef;
    for (const Field& f : rec.fields) {
      AstNode child;
      child.name = f.name;
      child.path = node.path + "." + f.name;
      auto ok = BuildField(&rec, f, child);
      if (!ok) return ok;
      node.children.push_back(std::move(child));
    }
    return {};
  }

 private:
  Expected<void, GenError> BuildField(const Record* rec, const Field& f, AstNode& node) {
    node.kind = f.kind;
    Rng rng = rng_.Fork(node.path);
    switch (f.kind) {
      case FieldKind::kInt:
        node.int_value = (rec != nullptr && testlang::IsSizeField(*rec, f.name)) ? 0 : DrawInt(f, rng);
        return {};
      case FieldKind::kRecordRef: {
        const Record* target = doc_.FindRecord(f.record);
        if (target == nullptr) return MakeUnexpected(Invalid(node.path, "unknown record " + f.record));
        return BuildRecord(*target, node);
      }
      case FieldKind::kArray: {
        auto count = DrawLength(rec, f, node.path, rng);
        if (!count) return MakeUnexpected(count.error());
        for (std::uint64_t i = 0; i < *count; ++i) {
          AstNode child;
          child.name = "[" + std::to_string(i) + "]";
          child.path = node.path + child.name;
          auto ok = BuildField(nullptr, *f.element, child);
          if (!ok) return ok;
          node.children.push_back(std::move(child));
        }
        return {};
      }
      case FieldKind::kCustom: return BuildCustom(rec, f, node, rng);
      default: return BuildContent(rec, f, node, rng);
    }
  }

  static Int128 DrawInt(const Field& f, Rng& rng) {
    if (const auto* r = std::get_if<testlang::IntRange>(&f.constraint)) {
      return rng.UniformWide(r->lo, r->hi);
    }
    if (const auto* e = std::get_if<testlang::IntEnum>(&f.constraint)) {
      return e->values[rng.Index(e->values.size())];
    }
    if (const auto* c = std::get_if<testlang::IntConst>(&f.constraint)) return c->value;
    return rng.UniformWide(MinForWidth(f.width, f.is_signed), MaxForWidth(f.width, f.is_signed));
  }

  // Content length (bytes, or elements for arrays).
  Expected<std::uint64_t, GenError> DrawLength(const Record* rec, const Field& f,
                                               const std::string& path, Rng& rng) {
    bool elements = f.kind == FieldKind::kArray;
    if (const auto* fixed = std::get_if<testlang::SizeFixed>(&f.size)) return fixed->n;
    if (const auto* ref = std::get_if<testlang::SizeRef>(&f.size)) {
      const Field* size_field = rec != nullptr ? testlang::FindField(*rec, ref->field) : nullptr;
      if (size_field == nullptr) return MakeUnexpected(Invalid(path, "unresolved size reference"));
      auto candidates = testlang::RefLengthCandidates(*size_field, f);
      if (candidates.empty()) {
        return MakeUnexpected(Invalid(path, "no length satisfies size field " + ref->field));
      }
      return candidates[rng.Index(candidates.size())];
    }
    std::uint64_t cap = elements ? testlang::kMaxGeneratedElements : testlang::kMaxGeneratedBytes;
    if (const auto* range = std::get_if<testlang::SizeRange>(&f.size)) {
      return rng.Uniform(range->min, std::max(range->min, std::min(range->max, cap)));
    }
    return rng.Uniform(0, elements ? testlang::kDefaultMaxElements : testlang::kDefaultMaxBytes);
  }

  Expected<void, GenError> BuildContent(const Record* rec, const Field& f, AstNode& node,
                                        Rng& rng) {
    if (const auto* c = std::get_if<testlang::BytesConst>(&f.constraint)) {
      node.content = c->value;
      return {};
    }
    if (const auto* e = std::get_if<testlang::BytesEnum>(&f.constraint)) {
      node.content = e->values[rng.Index(e->values.size())];
      return {};
    }
    auto length = DrawLength(rec, f, node.path, rng);
    if (!length) return MakeUnexpected(length.error());
    const auto* term = std::get_if<testlang::Terminator>(&f.constraint);
    // Content never holds the terminator's first byte, so the terminator
    // cannot start inside it.
    int banned = term != nullptr && !term->sequence.empty() ? term->sequence[0] : -1;
    node.content.resize(*length);
    for (std::uint8_t& b : node.content) {
      do {
        b = f.kind == FieldKind::kString ? static_cast<std::uint8_t>(rng.Uniform(0x20, 0x7E))
                                         : static_cast<std::uint8_t>(rng.Uniform(0, 255));
      } while (b == banned);
    }
    return {};
  }

  Expected<void, GenError> BuildCustom(const Record* rec, const Field& f, AstNode& node,
                                       Rng& rng) {
    bool sized = !std::holds_alternative<std::monostate>(f.size);
    if (const auto* builtin = std::get_if<testlang::BuiltinGenerator>(&*f.generator)) {
      std::uint64_t length = 0;
      if (sized) {
        auto drawn = DrawLength(rec, f, node.path, rng);
        if (!drawn) return MakeUnexpected(drawn.error());
        length = *drawn;
      } else {
        length = BuiltinNaturalLength(*builtin, rng);
      }
      node.content = RunBuiltin(*builtin, length, rng);
      return {};
    }
    const auto& external = std::get<testlang::ExternalGenerator>(*f.generator);
    std::size_t max_bytes = options_.external.max_output;
    if (sized) {
      auto drawn = DrawLength(rec, f, node.path, rng);
      if (!drawn) return MakeUnexpected(drawn.error());
      max_bytes = static_cast<std::size_t>(*drawn);
    }
    auto out = RunExternalGenerator(external, rng.Next(), max_bytes, node.path, options_.external);
    if (!out) {
      return MakeUnexpected(GenError{GenErrorCode::kExternalGeneratorFailure, node.path,
                                     std::string(ExternalErrorKindName(out.error().kind)) + ": " +
                                         out.error().message});
    }
    node.content = std::move(*out);
    if (std::holds_alternative<testlang::SizeFixed>(f.size)) node.content.resize(max_bytes, 0);
    return {};
  }

  const TestlangDoc& doc_;
  const Rng& rng_;
  const GenOptions& options_;
};

AstNode NewRoot(std::string_view record) {
  AstNode root;
  root.name = std::string(record);
  root.path = std::string(record);
  root.kind = FieldKind::kRecordRef;
  return root;
}

Expected<AstNode, GenError> BuildTree(const TestlangDoc& doc, std::string_view record,
                                      const Rng& rng, const GenOptions& options) {
  const Record* rec = doc.FindRecord(record);
  if (rec == nullptr) {
    return MakeUnexpected(Invalid(std::string(record), "record not found"));
  }
  AstNode root = NewRoot(record);
  Builder builder(doc, rng, options);
  auto ok = builder.BuildRecord(*rec, root);
  if (!ok) return MakeUnexpected(ok.error());
  return root;
}

// --- Rendering -------------------------------------------------------------

class Renderer {
 public:
  explicit Renderer(const TestlangDoc& doc) : doc_(doc) {}

  void RenderRecord(const Record& rec, AstNode& node, Bytes& out) {
    std::size_t start = out.size();
    std::size_t n = std::min(rec.fields.size(), node.children.size());
    for (std::size_t i = 0; i < n; ++i) RenderField(rec.fields[i], node.children[i], out);
    for (std::size_t i = 0; i < n; ++i) {
      const auto* ref = std::get_if<testlang::SizeRef>(&rec.fields[i].size);
      if (ref == nullptr) continue;
      auto idx = testlang::FieldIndex(rec, ref->field);
      if (!idx || *idx >= n) continue;
      Backpatch(rec.fields[*idx], node.children[*idx], rec.fields[i], node.children[i], out);
    }
    node.span = {start, out.size() - start};
  }

 private:
  void RenderField(const Field& f, AstNode& node, Bytes& out) {
    std::size_t start = out.size();
    switch (f.kind) {
      case FieldKind::kInt: {
        Bytes b = testlang::EncodeInt(node.int_value, f.width, doc_.EndianOf(f));
        out.insert(out.end(), b.begin(), b.end());
        node.constraint_satisfied = testlang::IntSatisfies(f.constraint, node.int_value);
        break;
      }
      case FieldKind::kRecordRef:
        if (const Record* rec = doc_.FindRecord(f.record)) RenderRecord(*rec, node, out);
        break;
      case FieldKind::kArray: {
        for (AstNode& child : node.children) RenderField(*f.element, child, out);
        const auto* range = std::get_if<testlang::SizeRange>(&f.size);
        node.constraint_satisfied =
            range == nullptr ||
            (node.children.size() >= range->min && node.children.size() <= range->max);
        break;
      }
      default: {
        Bytes wire = WireContent(f, node);
        out.insert(out.end(), wire.begin(), wire.end());
        if (const auto* t = std::get_if<testlang::Terminator>(&f.constraint)) {
          out.insert(out.end(), t->sequence.begin(), t->sequence.end());
        }
        bool ok = testlang::BytesSatisfies(f.constraint, node.content);
        if (const auto* fixed = std::get_if<testlang::SizeFixed>(&f.size)) {
          ok = ok && node.content.size() == fixed->n;
        } else if (const auto* range = std::get_if<testlang::SizeRange>(&f.size)) {
          ok = ok && node.content.size() >= range->min && node.content.size() <= range->max;
        }
        node.constraint_satisfied = ok;
        break;
      }
    }
    node.span = {start, out.size() - start};
  }

  static Bytes WireContent(const Field& f, const AstNode& node) {
    if (f.encoder) return testlang::ApplyEncoder(*f.encoder, node.content);
    return node.content;
  }

  void Backpatch(const Field& size_field, AstNode& size_node, const Field& sized,
                 const AstNode& sized_node, Bytes& out) {
    if (!size_node.pinned) {
      size_node.int_value = sized.kind == FieldKind::kArray
                                ? static_cast<Int128>(sized_node.children.size())
                                : static_cast<Int128>(WireContent(sized, sized_node).size());
    }
    Bytes b = testlang::EncodeInt(size_node.int_value, size_field.width, doc_.EndianOf(size_field));
    std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(size_node.span.offset));
    size_node.constraint_satisfied = testlang::IntSatisfies(size_field.constraint,
                                                            size_node.int_value);
  }

  const TestlangDoc& doc_;
};

// --- fdp mapping -----------------------------------------------------------

class CallEmitter {
 public:
  explicit CallEmitter(const TestlangDoc& doc) : doc_(doc) {}

  Expected<void, GenError> EmitRecord(const Record& rec, AstNode& node, bool tail) {
    std::size_t n = std::min(rec.fields.size(), node.children.size());
    for (std::size_t i = 0; i < n; ++i) {
      auto ok = EmitField(rec.fields[i], node.children[i], tail && i + 1 == rec.fields.size());
      if (!ok) return ok;
    }
    return {};
  }

  std::vector<fdp::FdpCall> Take() { return std::move(calls_); }

 private:
  Expected<void, GenError> EmitField(const Field& f, AstNode& node, bool tail) {
    node.span = {};
    switch (f.kind) {
      case FieldKind::kRecordRef:
        return EmitRecord(*doc_.FindRecord(f.record), node, tail);
      case FieldKind::kArray:
        if (testlang::IsOpenLength(f)) return Unsupported(node, "arrays need a fixed or referenced count");
        for (AstNode& child : node.children) {
          auto ok = EmitField(*f.element, child, false);
          if (!ok) return ok;
        }
        return {};
      case FieldKind::kInt:
        Push(node, IntCall(f, node.int_value));
        return {};
      default:
        break;
    }
    if (std::holds_alternative<testlang::Terminator>(f.constraint)) {
      return Unsupported(node, "terminators have no producer mapping");
    }
    Bytes wire = f.encoder ? testlang::ApplyEncoder(*f.encoder, node.content) : node.content;
    bool open = testlang::IsOpenLength(f);
    if (f.kind == FieldKind::kString) {
      fdp::ProduceString s{std::move(wire)};
      if (const auto* range = std::get_if<testlang::SizeRange>(&f.size)) {
        s.policy = fdp::StringPolicy::kRandomLength;
        s.max_length = static_cast<std::size_t>(testlang::WireLength(f, range->max));
      } else if (!open) {
        s.policy = fdp::StringPolicy::kBytesAsString;
      } else if (tail) {
        s.policy = fdp::StringPolicy::kRemaining;
      } else {
        s.policy = fdp::StringPolicy::kRandomLength;
        s.max_length = static_cast<std::size_t>(testlang::WireLength(f, testlang::kDefaultMaxBytes));
      }
      Push(node, s);
      return {};
    }
    if (!open) {
      Push(node, fdp::ProduceBytes{std::move(wire)});
    } else if (tail) {
      Push(node, fdp::ProduceRemainingBytes{std::move(wire)});
    } else {
      return Unsupported(node, "open-length bytes must come last");
    }
    return {};
  }

  static fdp::CallOp IntCall(const Field& f, Int128 v) {
    if (f.as_bool) return fdp::ProduceBool{v != 0};
    if (const auto* r = std::get_if<testlang::IntRange>(&f.constraint)) {
      return fdp::ProduceIntInRange{f.width, f.is_signed, r->lo, r->hi, v};
    }
    if (const auto* e = std::get_if<testlang::IntEnum>(&f.constraint)) {
      auto [lo, hi] = std::minmax_element(e->values.begin(), e->values.end());
      return fdp::ProduceIntInRange{f.width, f.is_signed, *lo, *hi, v};
    }
    if (const auto* c = std::get_if<testlang::IntConst>(&f.constraint)) {
      return fdp::ProduceIntInRange{f.width, f.is_signed, c->value, c->value, v};
    }
    return fdp::ProduceInt{f.width, f.is_signed, v};
  }

  void Push(AstNode& node, fdp::CallOp op) {
    node.fdp_call = calls_.size();
    calls_.push_back({std::move(op), true});
  }

  Expected<void, GenError> Unsupported(const AstNode& node, std::string message) {
    return MakeUnexpected(GenError{GenErrorCode::kUnsupportedKindForFdp, node.path, std::move(message)});
  }

  const TestlangDoc& doc_;
  std::vector<fdp::FdpCall> calls_;
};

// Crash edits that a producer call can still carry: content of const/enum
// bytes and strings, and enum ints whose value falls between members.
std::vector<AstEdit> FdpCrashMenu(const TestlangDoc& doc, const AstNode& root) {
  std::vector<AstEdit> menu;
  for (AstEdit& e : CrashMenu(doc, root)) {
    if (e.path != e.blamed || e.element_count) continue;
    const AstNode* node = testlang::FindNode(root, e.path);
    if (node == nullptr) continue;
    if (e.content && !node->content.empty() && e.content->size() == node->content.size()) {
      menu.push_back(std::move(e));
    }
  }
  return menu;
}

void AddEnumGapEdits(const TestlangDoc& doc, const Record& rec, const AstNode& node,
                     std::vector<AstEdit>& menu) {
  for (std::size_t i = 0; i < rec.fields.size() && i < node.children.size(); ++i) {
    const Field& f = rec.fields[i];
    const AstNode& child = node.children[i];
    if (f.kind == FieldKind::kRecordRef) {
      if (const Record* next = doc.FindRecord(f.record)) AddEnumGapEdits(doc, *next, child, menu);
      continue;
    }
    const auto* e = std::get_if<testlang::IntEnum>(&f.constraint);
    if (f.kind != FieldKind::kInt || e == nullptr) continue;
    auto [lo, hi] = std::minmax_element(e->values.begin(), e->values.end());
    for (Int128 v = *lo + 1; v < *hi && v <= *lo + 64; ++v) {
      if (!testlang::IntSatisfies(f.constraint, v)) {
        menu.push_back({child.path, child.path, v, std::nullopt, std::nullopt});
        break;
      }
    }
  }
}

}  // namespace

std::string_view GenErrorCodeName(GenErrorCode code) {
  switch (code) {
    case GenErrorCode::kNoEligibleField: return "NoEligibleField";
    case GenErrorCode::kExternalGeneratorFailure: return "ExternalGeneratorFailure";
    case GenErrorCode::kUnsupportedKindForFdp: return "UnsupportedKindForFdp";
    case GenErrorCode::kInvalidDocument: return "InvalidDocument";
  }
  return "Unknown";
}

Bytes Render(const TestlangDoc& doc, AstNode& root) {
  Bytes out;
  if (const Record* entry = doc.FindRecord(root.name)) Renderer(doc).RenderRecord(*entry, root, out);
  return out;
}

Expected<Generated, GenError> Generate(const TestlangDoc& doc, const Rng& rng, GenMode mode,
                                       const GenOptions& options) {
  if (doc.is_partial) return MakeUnexpected(Invalid("", "partial documents must be merged first"));
  if (doc.mode != testlang::DocMode::kBytes) {
    return MakeUnexpected(Invalid("", "bytes generation needs a bytes-mode document"));
  }
  auto tree = BuildTree(doc, testlang::kEntryRecord, rng, options);
  if (!tree) return MakeUnexpected(tree.error());
  Generated out;
  out.ast.root = std::move(*tree);
  out.ast.doc_id = testlang::DocId(doc);
  out.ast.mode_used = mode;
  out.bytes = Render(doc, out.ast.root);
  if (mode == GenMode::kCrash) {
    Rng crash_rng = rng.Fork("crash");
    auto verified = DrawVerifiedEdit(doc, out.ast.root, CrashMenu(doc, out.ast.root), crash_rng);
    if (!verified) {
      return MakeUnexpected(GenError{GenErrorCode::kNoEligibleField, "",
                                     "no field can be violated detectably"});
    }
    out.ast.root = std::move(verified->root);
    out.bytes = std::move(verified->bytes);
    out.ast.violated_fields = {verified->edit.blamed};
  }
  return out;
}

Expected<GeneratedFdp, GenError> GenerateFdpCalls(const TestlangDoc& doc, const Rng& rng,
                                                  GenMode mode, const GenOptions& options) {
  if (doc.is_partial) return MakeUnexpected(Invalid("", "partial documents must be merged first"));
  if (doc.mode != testlang::DocMode::kFdp) {
    return MakeUnexpected(Invalid("", "producer calls need an fdp-mode document"));
  }
  auto tree = BuildTree(doc, testlang::kEntryRecord, rng, options);
  if (!tree) return MakeUnexpected(tree.error());
  GeneratedFdp out;
  out.ast.root = std::move(*tree);
  out.ast.doc_id = testlang::DocId(doc);
  out.ast.mode_used = mode;
  Render(doc, out.ast.root);
  if (mode == GenMode::kCrash) {
    std::vector<AstEdit> menu = FdpCrashMenu(doc, out.ast.root);
    AddEnumGapEdits(doc, *doc.Entry(), out.ast.root, menu);
    if (menu.empty()) {
      return MakeUnexpected(GenError{GenErrorCode::kNoEligibleField, "",
                                     "no field can carry an out-of-constraint value"});
    }
    Rng crash_rng = rng.Fork("crash");
    const AstEdit& edit = menu[crash_rng.Index(menu.size())];
    ApplyEdit(out.ast.root, edit);
    Render(doc, out.ast.root);
    out.ast.violated_fields = {edit.blamed};
  }
  CallEmitter emitter(doc);
  auto ok = emitter.EmitRecord(*doc.Entry(), out.ast.root, /*tail=*/true);
  if (!ok) return MakeUnexpected(ok.error());
  out.calls = emitter.Take();
  return out;
}

Expected<Bytes, GenError> GenerateRecord(const TestlangDoc& doc, std::string_view record,
                                         const Rng& rng, const GenOptions& options) {
  auto tree = BuildTree(doc, record, rng, options);
  if (!tree) return MakeUnexpected(tree.error());
  return Render(doc, *tree);
}

}  // namespace testforge::serializer
