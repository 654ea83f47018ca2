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

#include "testforge/testlang/transforms.h"

#include <array>

namespace testforge::testlang {

namespace {

constexpr char kBase64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int Base64Value(std::uint8_t c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

Bytes Base64Encode(ByteSpan raw) {
  Bytes out;
  out.reserve(EncodedLength("base64", raw.size()));
  std::size_t i = 0;
  for (; i + 3 <= raw.size(); i += 3) {
    std::uint32_t v = raw[i] << 16 | raw[i + 1] << 8 | raw[i + 2];
    for (int s = 18; s >= 0; s -= 6) out.push_back(kBase64Alphabet[(v >> s) & 63]);
  }
  std::size_t rest = raw.size() - i;
  if (rest == 1) {
    std::uint32_t v = raw[i] << 16;
    out.push_back(kBase64Alphabet[(v >> 18) & 63]);
    out.push_back(kBase64Alphabet[(v >> 12) & 63]);
    out.push_back('=');
    out.push_back('=');
  } else if (rest == 2) {
    std::uint32_t v = raw[i] << 16 | raw[i + 1] << 8;
    out.push_back(kBase64Alphabet[(v >> 18) & 63]);
    out.push_back(kBase64Alphabet[(v >> 12) & 63]);
    out.push_back(kBase64Alphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

// Strict: canonical padding and zero trailing bits, so decoding is the exact
// inverse of encoding.
std::optional<Bytes> Base64Decode(ByteSpan wire) {
  if (wire.size() % 4 != 0) return std::nullopt;
  Bytes out;
  for (std::size_t i = 0; i < wire.size(); i += 4) {
    bool last = i + 4 == wire.size();
    int pad = 0;
    if (last && wire[i + 3] == '=') pad = wire[i + 2] == '=' ? 2 : 1;
    std::array<int, 4> v{};
    for (int k = 0; k < 4 - pad; ++k) {
      v[k] = Base64Value(wire[i + k]);
      if (v[k] < 0) return std::nullopt;
    }
    std::uint32_t word = v[0] << 18 | v[1] << 12 | v[2] << 6 | v[3];
    out.push_back(static_cast<std::uint8_t>(word >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>(word >> 8));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(word));
    if (pad == 2 && (word & 0xFFFF) != 0) return std::nullopt;
    if (pad == 1 && (word & 0xFF) != 0) return std::nullopt;
  }
  return out;
}

constexpr std::array<std::string_view, 4> kBuiltins = {
    "ascii_digits", "ascii_printable", "utf8_text", "uuid_like"};

}  // namespace

bool IsKnownEncoder(std::string_view name) {
  return name == "hex" || name == "base64";
}

Bytes ApplyEncoder(std::string_view name, ByteSpan raw) {
  if (name == "hex") return ToBytes(HexEncode(raw));
  return Base64Encode(raw);
}

std::optional<Bytes> InvertEncoder(std::string_view name, ByteSpan wire) {
  if (name == "hex") {
    // Only the lowercase form round-trips.
    for (std::uint8_t c : wire) {
      if (c >= 'A' && c <= 'F') return std::nullopt;
    }
    return HexDecode(ToString(wire));
  }
  return Base64Decode(wire);
}

std::size_t EncodedLength(std::string_view name, std::size_t raw_length) {
  if (name == "hex") return raw_length * 2;
  return (raw_length + 2) / 3 * 4;
}

std::span<const std::string_view> BuiltinGeneratorNames() { return kBuiltins; }

bool IsKnownBuiltinGenerator(std::string_view name) {
  for (auto b : kBuiltins) {
    if (b == name) return true;
  }
  return false;
}

}  // namespace testforge::testlang
