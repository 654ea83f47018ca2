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

#ifndef TESTFORGE_COMMON_SHA256_H_
#define TESTFORGE_COMMON_SHA256_H_

#include <string>

#include "testforge/common/bytes.h"

namespace testforge {

// Lowercase hex SHA-256 digest (64 characters).
std::string Sha256Hex(ByteSpan data);
inline std::string Sha256Hex(std::string_view data) {
  return Sha256Hex(ByteSpan(reinterpret_cast<const std::uint8_t*>(data.data()),
                            data.size()));
}

}  // namespace testforge

#endif  // TESTFORGE_COMMON_SHA256_H_
