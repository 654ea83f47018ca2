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

#include "testforge/testlang/validate.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "testforge/testlang/layout.h"
#include "testforge/testlang/transforms.h"

namespace testforge::testlang {

namespace {

class Validator {
 public:
  explicit Validator(const TestlangDoc& doc) : doc_(doc) {}

  Diagnostics Run() {
    CheckRecordNames();
    for (const Record& r : doc_.records) CheckRecord(r);
    CheckCycles();
    if (!doc_.is_partial) {
      const Record* entry = doc_.Entry();
      if (entry == nullptr) {
        Error(DiagCode::kMissingEntryRecord, "records",
              "complete documents need an \"INPUT\" record");
      } else if (!has_cycle_) {
        std::set<std::string> reached;
        Reach(*entry, reached);
        for (const Record& r : doc_.records) {
          if (!reached.contains(r.name)) {
            Warn(DiagCode::kUnusedRecord, RecordPath(r), "not reachable from INPUT");
          }
        }
        std::set<std::string> stack;
        WalkPlacement(*entry, /*region_tail=*/true, stack);
      }
    } else if (doc_.Entry() != nullptr) {
      Warn(DiagCode::kPartialRedefinesEntry, "records.INPUT",
           "partial document replaces the base entry record");
    }
    return std::move(diags_);
  }

 private:
  void Error(DiagCode code, std::string path, std::string message) {
    diags_.push_back({Severity::kError, code, std::move(path), std::move(message)});
  }
  void Warn(DiagCode code, std::string path, std::string message) {
    diags_.push_back({Severity::kWarning, code, std::move(path), std::move(message)});
  }

  static std::string RecordPath(const Record& r) { return "records." + r.name; }
  static std::string FieldPath(const Record& r, const Field& f) {
    return RecordPath(r) + ".fields." + f.name;
  }

  void CheckRecordNames() {
    std::set<std::string> seen;
    for (const Record& r : doc_.records) {
      if (!seen.insert(r.name).second) {
        Error(DiagCode::kDuplicateRecord, RecordPath(r), "record defined twice");
      }
    }
  }

  void CheckRecord(const Record& r) {
    if (r.fields.empty()) {
      Warn(DiagCode::kEmptyRecord, RecordPath(r), "record has no fields");
    }
    std::set<std::string> names;
    std::map<std::string, std::string> size_users;
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
      const Field& f = r.fields[i];
      std::string path = FieldPath(r, f);
      if (!names.insert(f.name).second) {
        Error(DiagCode::kDuplicateField, path, "field name repeats within the record");
      }
      if (const auto* ref = std::get_if<SizeRef>(&f.size)) {
        CheckSizeRef(r, i, *ref, path);
        auto [it, inserted] = size_users.emplace(ref->field, f.name);
        if (!inserted) {
          Error(DiagCode::kSharedSizeRef, path + ".size",
                "\"" + ref->field + "\" already sizes \"" + it->second + "\"");
        }
      }
      CheckField(r, f, path, /*in_element=*/false);
    }
  }

  void CheckSizeRef(const Record& r, std::size_t index, const SizeRef& ref,
                    const std::string& path) {
    const Field& sized = r.fields[index];
    auto target = FieldIndex(r, ref.field);
    std::string spath = path + (sized.kind == FieldKind::kArray ? ".count" : ".size");
    if (!target) {
      Error(DiagCode::kUnresolvedSizeRef, spath, "no field named \"" + ref.field + "\"");
      return;
    }
    if (*target >= index) {
      Error(DiagCode::kSizeRefNotPreceding, spath,
            "\"" + ref.field + "\" must appear before the field it sizes");
      return;
    }
    const Field& size_field = r.fields[*target];
    if (size_field.kind != FieldKind::kInt || size_field.as_bool) {
      Error(DiagCode::kSizeRefNotInt, spath, "\"" + ref.field + "\" is not an int field");
      return;
    }
    bool want_elements = sized.kind == FieldKind::kArray;
    if ((ref.unit == SizeUnit::kElements) != want_elements) {
      Error(DiagCode::kInvalidSize, spath,
            want_elements ? "array counts are measured in elements"
                          : "content sizes are measured in bytes");
      return;
    }
    if (sized.kind == FieldKind::kRecordRef) return;
    if (const auto* k = std::get_if<BytesConst>(&sized.constraint)) {
      if (!IntSatisfies(size_field.constraint, WireLength(sized, k->value.size()))) {
        Error(DiagCode::kUnsatisfiableField, path,
              "const length conflicts with the size field's constraint");
      }
      return;
    }
    if (const auto* e = std::get_if<BytesEnum>(&sized.constraint)) {
      bool any = std::any_of(e->values.begin(), e->values.end(), [&](const Bytes& v) {
        Int128 len = WireLength(sized, v.size());
        return FitsWidth(len, size_field.width, size_field.is_signed) &&
               IntSatisfies(size_field.constraint, len);
      });
      if (!any) {
        Error(DiagCode::kUnsatisfiableField, path,
              "no enum value has a length the size field allows");
      }
      return;
    }
    if (RefLengthCandidates(size_field, sized).empty()) {
      Error(DiagCode::kUnsatisfiableField, path,
            "the size field's width and constraint admit no length");
    }
  }

  void CheckField(const Record& r, const Field& f, const std::string& path, bool in_element) {
    if (in_element && std::holds_alternative<SizeRef>(f.size)) {
      Error(DiagCode::kUnresolvedSizeRef, path + ".size",
            "array elements cannot reference sibling fields");
    }
    if (const auto* range = std::get_if<SizeRange>(&f.size); range && range->min > range->max) {
      Error(DiagCode::kInvalidSize, path + ".size", "min exceeds max");
    }
    switch (f.kind) {
      case FieldKind::kInt: CheckInt(r, f, path); break;
      case FieldKind::kBytes:
      case FieldKind::kString: CheckBytesLike(f, path); break;
      case FieldKind::kCustom: CheckCustom(f, path); break;
      case FieldKind::kRecordRef:
        if (!std::holds_alternative<std::monostate>(f.size)) {
          Error(DiagCode::kInvalidSize, path + ".size", "record fields take their size from content");
        }
        if (doc_.FindRecord(f.record) == nullptr) {
          if (doc_.is_partial) {
            Warn(DiagCode::kUnresolvedInPartial, path + ".record",
                 "\"" + f.record + "\" must come from the base document");
          } else {
            Error(DiagCode::kUnresolvedRecordRef, path + ".record",
                  "no record named \"" + f.record + "\"");
          }
        }
        break;
      case FieldKind::kArray:
        if (std::holds_alternative<std::monostate>(f.size)) {
          Error(DiagCode::kInvalidSize, path + ".count", "array needs a count");
        }
        if (f.element) CheckField(r, *f.element, path + ".element", /*in_element=*/true);
        break;
    }
    if (f.encoder) {
      if (!IsKnownEncoder(*f.encoder)) {
        Error(DiagCode::kUnknownEncoder, path + ".encoder", "unknown encoder \"" + *f.encoder + "\"");
      } else if (!IsLeafKind(f.kind) || f.kind == FieldKind::kInt) {
        Error(DiagCode::kUnknownEncoder, path + ".encoder",
              "encoders apply to bytes, string and custom fields");
      } else if (std::holds_alternative<Terminator>(f.constraint)) {
        Error(DiagCode::kInvalidConstraint, path,
              "terminators cannot be combined with an encoder");
      }
    }
    if (f.hint && !IsLeafKind(f.kind)) {
      Error(DiagCode::kInvalidValue, path + ".hint", "hints apply to leaf fields");
    }
  }

  void CheckInt(const Record& r, const Field& f, const std::string& path) {
    if (const auto* fixed = std::get_if<SizeFixed>(&f.size)) {
      if (fixed->n != static_cast<std::uint64_t>(f.width / 8)) {
        Error(DiagCode::kInvalidSize, path + ".size", "int size must equal width/8");
      }
    } else if (!std::holds_alternative<std::monostate>(f.size)) {
      Error(DiagCode::kInvalidSize, path + ".size", "int fields have a fixed size");
    }
    auto fits = [&](Int128 v) { return FitsWidth(v, f.width, f.is_signed); };
    if (const auto* range = std::get_if<IntRange>(&f.constraint)) {
      if (range->lo > range->hi) {
        Error(DiagCode::kInvalidConstraint, path + ".range", "lo exceeds hi");
      } else if (!fits(range->lo) || !fits(range->hi)) {
        Error(DiagCode::kConstraintOutOfWidth, path + ".range", "bounds exceed the field width");
      }
    } else if (const auto* e = std::get_if<IntEnum>(&f.constraint)) {
      if (e->values.empty()) {
        Error(DiagCode::kInvalidConstraint, path + ".enum", "enum needs at least one value");
      } else if (!std::all_of(e->values.begin(), e->values.end(), fits)) {
        Error(DiagCode::kConstraintOutOfWidth, path + ".enum", "value exceeds the field width");
      }
    } else if (const auto* k = std::get_if<IntConst>(&f.constraint)) {
      if (!fits(k->value)) {
        Error(DiagCode::kConstraintOutOfWidth, path + ".const", "value exceeds the field width");
      }
    } else if (!std::holds_alternative<std::monostate>(f.constraint)) {
      Error(DiagCode::kInvalidConstraint, path, "int fields take range, enum or const");
    } else if (!f.as_bool && !IsSizeField(r, f.name)) {
      Warn(DiagCode::kUnconstrainedField, path, "int field has no constraint");
    }
  }

  void CheckBytesLike(const Field& f, const std::string& path) {
    if (const auto* t = std::get_if<Terminator>(&f.constraint)) {
      if (t->sequence.empty()) {
        Error(DiagCode::kInvalidConstraint, path + ".terminator", "terminator must be non-empty");
      }
    } else if (const auto* e = std::get_if<BytesEnum>(&f.constraint)) {
      if (e->values.empty()) {
        Error(DiagCode::kInvalidConstraint, path + ".enum", "enum needs at least one value");
      }
      for (const Bytes& v : e->values) CheckContentLength(f, v.size(), path);
    } else if (const auto* k = std::get_if<BytesConst>(&f.constraint)) {
      CheckContentLength(f, k->value.size(), path);
    } else if (!std::holds_alternative<std::monostate>(f.constraint)) {
      Error(DiagCode::kInvalidConstraint, path, "bytes fields take enum, const or terminator");
    }
  }

  void CheckContentLength(const Field& f, std::size_t len, const std::string& path) {
    bool ok = true;
    if (const auto* fixed = std::get_if<SizeFixed>(&f.size)) ok = fixed->n == len;
    if (const auto* range = std::get_if<SizeRange>(&f.size)) {
      ok = len >= range->min && len <= range->max;
    }
    if (!ok) {
      Error(DiagCode::kUnsatisfiableField, path, "value length conflicts with the declared size");
    }
  }

  void CheckCustom(const Field& f, const std::string& path) {
    if (!std::holds_alternative<std::monostate>(f.constraint)) {
      Error(DiagCode::kInvalidConstraint, path, "custom fields take no value constraint");
    }
    if (!f.generator) return;
    if (const auto* b = std::get_if<BuiltinGenerator>(&*f.generator)) {
      if (!IsKnownBuiltinGenerator(b->name)) {
        Error(DiagCode::kUnknownGenerator, path + ".generator",
              "unknown builtin generator \"" + b->name + "\"");
      }
    } else if (std::get<ExternalGenerator>(*f.generator).command.empty()) {
      Error(DiagCode::kInvalidValue, path + ".generator.command", "command is empty");
    }
  }

  // Record graph edges, including arrays of records.
  static void Edges(const Field& f, std::vector<std::string>& out) {
    if (f.kind == FieldKind::kRecordRef) out.push_back(f.record);
    if (f.kind == FieldKind::kArray && f.element) Edges(*f.element, out);
  }

  void CheckCycles() {
    std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
    for (const Record& r : doc_.records) {
      if (color[r.name] == 0) Visit(r, color);
    }
  }

  void Visit(const Record& r, std::map<std::string, int>& color) {
    color[r.name] = 1;
    for (const Field& f : r.fields) {
      std::vector<std::string> targets;
      Edges(f, targets);
      for (const std::string& t : targets) {
        const Record* next = doc_.FindRecord(t);
        if (next == nullptr) continue;
        if (color[t] == 1) {
          has_cycle_ = true;
          Error(DiagCode::kRecordCycle, FieldPath(r, f),
                "record \"" + r.name + "\" reaches itself through \"" + t + "\"");
        } else if (color[t] == 0) {
          Visit(*next, color);
        }
      }
    }
    color[r.name] = 2;
  }

  void Reach(const Record& r, std::set<std::string>& reached) {
    if (!reached.insert(r.name).second) return;
    for (const Field& f : r.fields) {
      std::vector<std::string> targets;
      Edges(f, targets);
      for (const std::string& t : targets) {
        if (const Record* next = doc_.FindRecord(t)) Reach(*next, reached);
      }
    }
  }

  // Tail-position rules (bytes mode) and producer mapping rules (fdp mode).
  void WalkPlacement(const Record& r, bool region_tail, std::set<std::string>& stack) {
    if (!stack.insert(r.name).second) return;
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
      const Field& f = r.fields[i];
      bool tail = region_tail && i + 1 == r.fields.size();
      CheckPlacement(f, FieldPath(r, f), tail, stack);
    }
    stack.erase(r.name);
  }

  void CheckPlacement(const Field& f, const std::string& path, bool tail,
                      std::set<std::string>& stack) {
    bool open = IsOpenLength(f);
    if (doc_.mode == DocMode::kBytes) {
      if (open && !tail) {
        Error(DiagCode::kAmbiguousLength, path,
              "open-length field must be the last thing in the input");
      }
    } else {
      if (std::holds_alternative<Terminator>(f.constraint)) {
        Error(DiagCode::kUnsupportedKindForFdp, path, "terminators have no producer mapping");
      } else if (f.kind == FieldKind::kArray && open) {
        Error(DiagCode::kUnsupportedKindForFdp, path, "fdp arrays need a fixed or referenced count");
      } else if (open && f.kind != FieldKind::kString && !tail) {
        Error(DiagCode::kUnsupportedKindForFdp, path,
              "open-length bytes map to remaining bytes and must come last");
      }
    }
    if (f.kind == FieldKind::kRecordRef) {
      if (const Record* next = doc_.FindRecord(f.record)) WalkPlacement(*next, tail, stack);
    } else if (f.kind == FieldKind::kArray && f.element) {
      const Field& e = *f.element;
      if (e.kind == FieldKind::kRecordRef) {
        if (const Record* next = doc_.FindRecord(e.record)) WalkPlacement(*next, false, stack);
      } else if (IsOpenLength(e) && doc_.mode == DocMode::kBytes) {
        Error(DiagCode::kAmbiguousLength, path + ".element", "array elements need a determinable length");
      }
    }
  }

  const TestlangDoc& doc_;
  Diagnostics diags_;
  bool has_cycle_ = false;
};

}  // namespace

Diagnostics Validate(const TestlangDoc& doc) { return Validator(doc).Run(); }

}  // namespace testforge::testlang
