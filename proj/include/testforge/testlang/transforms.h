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

#ifndef TESTFORGE_TESTLANG_TRANSFORMS_H_
#define TESTFORGE_TESTLANG_TRANSFORMS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "testforge/common/bytes.h"

namespace testforge::testlang {

// Wire encoders a leaf may name with "encoder". All are invertible and
// length-deterministic.
bool IsKnownEncoder(std::string_view name);
Bytes ApplyEncoder(std::string_view name, ByteSpan raw);
std::optional<Bytes> InvertEncoder(std::string_view name, ByteSpan wire);
std::size_t EncodedLength(std::string_view name, std::size_t raw_length);

// Builtin custom generators shipped with the serializer.
std::span<const std::string_view> BuiltinGeneratorNames();
bool IsKnownBuiltinGenerator(std::string_view name);

}  // namespace testforge::testlang

#endif  // TESTFORGE_TESTLANG_TRANSFORMS_H_
