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

#ifndef TESTFORGE_COMMON_BYTES_H_
#define TESTFORGE_COMMON_BYTES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace testforge {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

inline Bytes ToBytes(std::string_view s) { return Bytes(s.begin(), s.end()); }
inline std::string ToString(ByteSpan b) {
  return std::string(b.begin(), b.end());
}

// Lowercase hex, two digits per byte.
std::string HexEncode(ByteSpan data);
std::optional<Bytes> HexDecode(std::string_view hex);

// Printable ASCII passes through; backslash becomes "\\"; everything else
// becomes "\xNN".
std::string EscapeBytes(ByteSpan data);
// Inverse of EscapeBytes. Also accepts \n, \r, \t and \0.
std::optional<Bytes> UnescapeBytes(std::string_view text);

// Returns the offset of the first occurrence of `needle` in `haystack`.
std::optional<std::size_t> FindSubsequence(ByteSpan haystack, ByteSpan needle,
                                           std::size_t from = 0);

}  // namespace testforge

#endif  // TESTFORGE_COMMON_BYTES_H_
