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

#include "testforge/mutator/dictionary.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace testforge::mutator {

Expected<Dictionary, std::string> Dictionary::Parse(std::string_view text) {
  Dictionary dict;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = end + 1;
    if (line.empty()) continue;
    auto token = UnescapeBytes(line);
    if (!token) return MakeUnexpected("line " + std::to_string(line_no) + ": bad escape");
    if (token->size() > kMaxTokenSize) {
      return MakeUnexpected("line " + std::to_string(line_no) + ": token longer than " +
                            std::to_string(kMaxTokenSize) + " bytes");
    }
    dict.Add(std::move(*token));
  }
  return dict;
}

Expected<Dictionary, std::string> Dictionary::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return MakeUnexpected("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

bool Dictionary::Add(Bytes token) {
  if (token.empty() || token.size() > kMaxTokenSize) return false;
  if (std::find(tokens_.begin(), tokens_.end(), token) != tokens_.end()) return false;
  tokens_.push_back(std::move(token));
  return true;
}

}  // namespace testforge::mutator
