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

#include "testforge/testlang/doc.h"

namespace testforge::testlang {

std::string_view DocModeName(DocMode m) {
  return m == DocMode::kBytes ? "bytes" : "fdp";
}

std::string_view EndiannessName(Endianness e) {
  return e == Endianness::kBig ? "big" : "little";
}

std::string_view FieldKindName(FieldKind k) {
  switch (k) {
    case FieldKind::kInt: return "int";
    case FieldKind::kBytes: return "bytes";
    case FieldKind::kString: return "string";
    case FieldKind::kArray: return "array";
    case FieldKind::kRecordRef: return "record";
    case FieldKind::kCustom: return "custom";
  }
  return "?";
}

Field::Field(const Field& other)
    : name(other.name),
      kind(other.kind),
      width(other.width),
      is_signed(other.is_signed),
      as_bool(other.as_bool),
      endian(other.endian),
      size(other.size),
      constraint(other.constraint),
      record(other.record),
      element(other.element ? std::make_unique<Field>(*other.element)
                            : nullptr),
      generator(other.generator),
      encoder(other.encoder),
      hint(other.hint) {}

Field& Field::operator=(const Field& other) {
  if (this != &other) *this = Field(other);
  return *this;
}

bool Field::operator==(const Field& other) const {
  bool elements_equal =
      (element == nullptr && other.element == nullptr) ||
      (element != nullptr && other.element != nullptr &&
       *element == *other.element);
  return elements_equal && name == other.name && kind == other.kind &&
         width == other.width && is_signed == other.is_signed &&
         as_bool == other.as_bool && endian == other.endian &&
         size == other.size && constraint == other.constraint &&
         record == other.record && generator == other.generator &&
         encoder == other.encoder && hint == other.hint;
}

const Record* TestlangDoc::FindRecord(std::string_view name) const {
  for (const Record& r : records) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

Record* TestlangDoc::FindRecord(std::string_view name) {
  for (Record& r : records) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const Field* FindField(const Record& record, std::string_view name) {
  for (const Field& f : record.fields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::optional<std::size_t> FieldIndex(const Record& record,
                                      std::string_view name) {
  for (std::size_t i = 0; i < record.fields.size(); ++i) {
    if (record.fields[i].name == name) return i;
  }
  return std::nullopt;
}

const Field* SizedBy(const Record& record, std::string_view field_name) {
  for (const Field& f : record.fields) {
    if (const auto* ref = std::get_if<SizeRef>(&f.size);
        ref != nullptr && ref->field == field_name) {
      return &f;
    }
  }
  return nullptr;
}

bool IsSizeField(const Record& record, std::string_view field_name) {
  return SizedBy(record, field_name) != nullptr;
}

bool IsLeafKind(FieldKind k) {
  return k != FieldKind::kArray && k != FieldKind::kRecordRef;
}

bool HasIntConstraint(const Field& f) {
  return std::holds_alternative<IntRange>(f.constraint) ||
         std::holds_alternative<IntEnum>(f.constraint) ||
         std::holds_alternative<IntConst>(f.constraint);
}

bool HasBytesConstraint(const Field& f) {
  return std::holds_alternative<BytesEnum>(f.constraint) ||
         std::holds_alternative<BytesConst>(f.constraint);
}

}  // namespace testforge::testlang
