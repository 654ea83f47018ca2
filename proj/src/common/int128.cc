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

#include "testforge/common/int128.h"

#include <algorithm>

namespace testforge {

std::string Int128ToString(Int128 v) {
  if (v == 0) return "0";
  bool negative = v < 0;
  // Work on the unsigned magnitude so the minimum value does not overflow.
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v)
                                   : static_cast<unsigned __int128>(v);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<Int128> ParseInt128(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) return std::nullopt;
  unsigned __int128 mag = 0;
  bool hex = text.size() > i + 2 && text[i] == '0' &&
             (text[i + 1] == 'x' || text[i + 1] == 'X');
  if (hex) i += 2;
  for (; i < text.size(); ++i) {
    int d;
    char c = text[i];
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (hex && c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else if (hex && c >= 'A' && c <= 'F') {
      d = c - 'A' + 10;
    } else {
      return std::nullopt;
    }
    mag = mag * (hex ? 16 : 10) + d;
    if (mag > (static_cast<unsigned __int128>(1) << 100)) return std::nullopt;
  }
  Int128 v = static_cast<Int128>(mag);
  return negative ? -v : v;
}

Int128 MinForWidth(int width_bits, bool is_signed) {
  if (!is_signed) return 0;
  return -(static_cast<Int128>(1) << (width_bits - 1));
}

Int128 MaxForWidth(int width_bits, bool is_signed) {
  if (is_signed) return (static_cast<Int128>(1) << (width_bits - 1)) - 1;
  return (static_cast<Int128>(1) << width_bits) - 1;
}

bool FitsWidth(Int128 v, int width_bits, bool is_signed) {
  return v >= MinForWidth(width_bits, is_signed) &&
         v <= MaxForWidth(width_bits, is_signed);
}

std::uint64_t ToBits(Int128 v, int width_bits) {
  auto bits = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v));
  if (width_bits < 64) bits &= (std::uint64_t{1} << width_bits) - 1;
  return bits;
}

Int128 FromBits(std::uint64_t bits, int width_bits, bool is_signed) {
  if (width_bits < 64) bits &= (std::uint64_t{1} << width_bits) - 1;
  Int128 v = bits;
  if (is_signed && (bits >> (width_bits - 1)) & 1) {
    v -= static_cast<Int128>(1) << width_bits;
  }
  return v;
}

}  // namespace testforge
