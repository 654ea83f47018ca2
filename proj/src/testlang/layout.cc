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

#include "testforge/testlang/layout.h"

#include <algorithm>

#include "testforge/testlang/transforms.h"

namespace testforge::testlang {

bool IsOpenLength(const Field& f) {
  if (f.kind == FieldKind::kArray) return std::holds_alternative<SizeRange>(f.size);
  if (f.kind == FieldKind::kInt || f.kind == FieldKind::kRecordRef) return false;
  if (std::holds_alternative<Terminator>(f.constraint)) return false;
  return std::holds_alternative<SizeRange>(f.size) ||
         std::holds_alternative<std::monostate>(f.size);
}

std::uint64_t WireLength(const Field& f, std::uint64_t raw_length) {
  if (f.encoder) return EncodedLength(*f.encoder, raw_length);
  return raw_length;
}

bool IntSatisfies(const Constraint& c, Int128 value) {
  if (const auto* r = std::get_if<IntRange>(&c)) return value >= r->lo && value <= r->hi;
  if (const auto* e = std::get_if<IntEnum>(&c)) {
    return std::find(e->values.begin(), e->values.end(), value) != e->values.end();
  }
  if (const auto* k = std::get_if<IntConst>(&c)) return value == k->value;
  return true;
}

bool BytesSatisfies(const Constraint& c, ByteSpan content) {
  if (const auto* e = std::get_if<BytesEnum>(&c)) {
    return std::any_of(e->values.begin(), e->values.end(), [&](const Bytes& v) {
      return std::equal(v.begin(), v.end(), content.begin(), content.end());
    });
  }
  if (const auto* k = std::get_if<BytesConst>(&c)) {
    return std::equal(k->value.begin(), k->value.end(), content.begin(), content.end());
  }
  if (const auto* t = std::get_if<Terminator>(&c)) {
    return !FindSubsequence(content, t->sequence).has_value();
  }
  return true;
}

std::vector<std::uint64_t> RefLengthCandidates(const Field& size_field,
                                               const Field& sized) {
  bool elements = sized.kind == FieldKind::kArray;
  std::uint64_t cap = elements ? kMaxGeneratedElements : kMaxGeneratedBytes;
  std::uint64_t default_max = elements ? kDefaultMaxElements : kDefaultMaxBytes;
  std::uint64_t hi = HasIntConstraint(size_field) ? cap : default_max;
  std::vector<std::uint64_t> out;
  for (std::uint64_t len = 0; len <= hi; ++len) {
    Int128 measured = elements ? len : WireLength(sized, len);
    if (!FitsWidth(measured, size_field.width, size_field.is_signed)) break;
    if (IntSatisfies(size_field.constraint, measured)) out.push_back(len);
  }
  // A range that starts past the cap still gets a window of lengths.
  const auto* range = std::get_if<IntRange>(&size_field.constraint);
  if (out.empty() && range != nullptr && range->lo > 0 && !sized.encoder) {
    for (Int128 len = range->lo; len <= range->hi && len <= range->lo + cap; ++len) {
      if (!FitsWidth(len, size_field.width, size_field.is_signed)) break;
      out.push_back(static_cast<std::uint64_t>(len));
    }
  }
  return out;
}

Bytes EncodeInt(Int128 value, int width_bits, Endianness endian) {
  std::uint64_t bits = ToBits(value, width_bits);
  int n = width_bits / 8;
  Bytes out(n);
  for (int i = 0; i < n; ++i) {
    auto b = static_cast<std::uint8_t>(bits >> (8 * i));
    out[endian == Endianness::kLittle ? i : n - 1 - i] = b;
  }
  return out;
}

Int128 DecodeInt(ByteSpan bytes, bool is_signed, Endianness endian) {
  std::uint64_t bits = 0;
  std::size_t n = bytes.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t b = bytes[endian == Endianness::kLittle ? i : n - 1 - i];
    bits |= static_cast<std::uint64_t>(b) << (8 * i);
  }
  return FromBits(bits, static_cast<int>(n * 8), is_signed);
}

}  // namespace testforge::testlang
