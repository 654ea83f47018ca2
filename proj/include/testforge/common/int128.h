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

#ifndef TESTFORGE_COMMON_INT128_H_
#define TESTFORGE_COMMON_INT128_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace testforge {

// Wide enough to hold every value of every supported int field (u64 and
// i64) plus one step beyond either end, which boundary and violation menus
// need.
using Int128 = __int128;

std::string Int128ToString(Int128 v);
std::optional<Int128> ParseInt128(std::string_view text);

Int128 MinForWidth(int width_bits, bool is_signed);
Int128 MaxForWidth(int width_bits, bool is_signed);
bool FitsWidth(Int128 v, int width_bits, bool is_signed);

// Two's complement truncation to `width_bits` and back.
std::uint64_t ToBits(Int128 v, int width_bits);
Int128 FromBits(std::uint64_t bits, int width_bits, bool is_signed);

}  // namespace testforge

#endif  // TESTFORGE_COMMON_INT128_H_
