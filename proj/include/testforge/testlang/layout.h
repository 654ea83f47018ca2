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

#ifndef TESTFORGE_TESTLANG_LAYOUT_H_
#define TESTFORGE_TESTLANG_LAYOUT_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/int128.h"
#include "testforge/testlang/doc.h"

namespace testforge::testlang {

// Generation caps for lengths the document leaves open.
inline constexpr std::uint64_t kMaxGeneratedBytes = 256;
inline constexpr std::uint64_t kMaxGeneratedElements = 16;
inline constexpr std::uint64_t kDefaultMaxBytes = 32;
inline constexpr std::uint64_t kDefaultMaxElements = 4;

// A field whose wire extent cannot be determined before reading it: Range
// sizes or missing sizes without a terminator, and Range-count arrays. In
// bytes mode these may only appear in tail position.
bool IsOpenLength(const Field& f);

// Wire length of `raw_length` content bytes (applies the field's encoder).
std::uint64_t WireLength(const Field& f, std::uint64_t raw_length);

// Whether `value` satisfies an int constraint (no constraint: true).
bool IntSatisfies(const Constraint& c, Int128 value);
// Whether `content` satisfies a bytes constraint (Terminator: content must
// not contain the sequence).
bool BytesSatisfies(const Constraint& c, ByteSpan content);

// Content lengths (bytes, or elements for arrays) the sized field may take
// so that the backpatched size field satisfies its width and constraint.
// Sorted ascending, bounded by the generation caps.
std::vector<std::uint64_t> RefLengthCandidates(const Field& size_field,
                                               const Field& sized);

// Encodes an int as `width/8` bytes.
Bytes EncodeInt(Int128 value, int width_bits, Endianness endian);
Int128 DecodeInt(ByteSpan bytes, bool is_signed, Endianness endian);

}  // namespace testforge::testlang

#endif  // TESTFORGE_TESTLANG_LAYOUT_H_
