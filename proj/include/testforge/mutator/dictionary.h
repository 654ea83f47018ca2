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

#ifndef TESTFORGE_MUTATOR_DICTIONARY_H_
#define TESTFORGE_MUTATOR_DICTIONARY_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/expected.h"

namespace testforge::mutator {

inline constexpr std::size_t kMaxTokenSize = 256;

// Deduplicated token list for dictionary mutations.
class Dictionary {
 public:
  // One token per line; "\xNN" (and "\\", "\n", "\t", "\r", "\0") escapes;
  // empty lines are skipped. Fails on a bad escape or an oversized token,
  // naming the line.
  static Expected<Dictionary, std::string> Parse(std::string_view text);
  static Expected<Dictionary, std::string> Load(const std::string& path);

  // False when the token is empty, too large, or already present.
  bool Add(Bytes token);

  const std::vector<Bytes>& tokens() const { return tokens_; }
  bool empty() const { return tokens_.empty(); }
  std::size_t size() const { return tokens_.size(); }

 private:
  std::vector<Bytes> tokens_;
};

}  // namespace testforge::mutator

#endif  // TESTFORGE_MUTATOR_DICTIONARY_H_
