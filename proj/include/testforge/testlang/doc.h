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

#ifndef TESTFORGE_TESTLANG_DOC_H_
#define TESTFORGE_TESTLANG_DOC_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/int128.h"

namespace testforge::testlang {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kEntryRecord = "INPUT";

enum class DocMode { kBytes, kFdp };
enum class Endianness { kBig, kLittle };
enum class FieldKind { kInt, kBytes, kString, kArray, kRecordRef, kCustom };
enum class SizeUnit { kBytes, kElements };

std::string_view DocModeName(DocMode m);
std::string_view EndiannessName(Endianness e);
std::string_view FieldKindName(FieldKind k);

// Size of the field's content: bytes for leaves, element count for arrays.
struct SizeFixed {
  std::uint64_t n = 0;
  bool operator==(const SizeFixed&) const = default;
};
// Length is the value of an earlier int field in the same record.
struct SizeRef {
  std::string field;
  SizeUnit unit = SizeUnit::kBytes;
  bool operator==(const SizeRef&) const = default;
};
struct SizeRange {
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  bool operator==(const SizeRange&) const = default;
};
using SizeSpec = std::variant<std::monostate, SizeFixed, SizeRef, SizeRange>;

struct IntRange {
  Int128 lo = 0;
  Int128 hi = 0;
  bool operator==(const IntRange&) const = default;
};
struct IntEnum {
  std::vector<Int128> values;
  bool operator==(const IntEnum&) const = default;
};
struct IntConst {
  Int128 value = 0;
  bool operator==(const IntConst&) const = default;
};
struct BytesEnum {
  std::vector<Bytes> values;
  bool operator==(const BytesEnum&) const = default;
};
struct BytesConst {
  Bytes value;
  bool operator==(const BytesConst&) const = default;
};
// Content is followed by `sequence` on the wire and never contains it.
struct Terminator {
  Bytes sequence;
  bool operator==(const Terminator&) const = default;
};
using Constraint = std::variant<std::monostate, IntRange, IntEnum, IntConst,
                                BytesEnum, BytesConst, Terminator>;

struct BuiltinGenerator {
  std::string name;
  std::map<std::string, std::int64_t> args;
  bool operator==(const BuiltinGenerator&) const = default;
};
// argv template; "{seed}", "{max_bytes}" and "{field}" are substituted.
struct ExternalGenerator {
  std::vector<std::string> command;
  bool operator==(const ExternalGenerator&) const = default;
};
using GeneratorRef = std::variant<BuiltinGenerator, ExternalGenerator>;

struct Field {
  Field() = default;
  Field(const Field& other);
  Field& operator=(const Field& other);
  Field(Field&&) noexcept = default;
  Field& operator=(Field&&) noexcept = default;
  bool operator==(const Field& other) const;

  std::string name;
  FieldKind kind = FieldKind::kInt;
  // int only.
  int width = 32;
  bool is_signed = false;
  bool as_bool = false;
  std::optional<Endianness> endian;
  SizeSpec size;
  Constraint constraint;
  // record_ref only.
  std::string record;
  // array only; never null for arrays.
  std::unique_ptr<Field> element;
  // custom only.
  std::optional<GeneratorRef> generator;
  // Named transform applied to leaf content on the wire ("hex", "base64").
  std::optional<std::string> encoder;
  // Semantic role used by type-aware mutation ("filename", "query", ...).
  std::optional<std::string> hint;
};

struct Record {
  std::string name;
  std::vector<Field> fields;
  bool operator==(const Record&) const = default;
};

struct SourceLine {
  std::string path;
  std::uint32_t line = 0;
  auto operator<=>(const SourceLine&) const = default;
};

struct DocMetadata {
  std::vector<SourceLine> target_lines;
  bool deprioritized = false;
  std::uint64_t created_seq = 0;
  std::uint64_t use_count = 0;
  std::uint64_t lines_achieved = 0;
  bool operator==(const DocMetadata&) const = default;
};

struct TestlangDoc {
  int schema_version = kSchemaVersion;
  DocMode mode = DocMode::kBytes;
  Endianness default_endianness = Endianness::kBig;
  bool is_partial = false;
  std::vector<Record> records;
  DocMetadata metadata;

  const Record* FindRecord(std::string_view name) const;
  Record* FindRecord(std::string_view name);
  const Record* Entry() const { return FindRecord(kEntryRecord); }
  Endianness EndianOf(const Field& f) const {
    return f.endian.value_or(default_endianness);
  }
  bool operator==(const TestlangDoc&) const = default;
};

const Field* FindField(const Record& record, std::string_view name);
std::optional<std::size_t> FieldIndex(const Record& record,
                                      std::string_view name);

// True when some later field in `record` sizes itself by `field_name`.
bool IsSizeField(const Record& record, std::string_view field_name);
// The field sized by `field_name`, if any.
const Field* SizedBy(const Record& record, std::string_view field_name);

bool IsLeafKind(FieldKind k);
bool HasIntConstraint(const Field& f);
bool HasBytesConstraint(const Field& f);

}  // namespace testforge::testlang

#endif  // TESTFORGE_TESTLANG_DOC_H_
