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

#ifndef TESTFORGE_COMMON_FILE_H_
#define TESTFORGE_COMMON_FILE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace testforge {

std::optional<std::string> ReadFile(const std::filesystem::path& path);

// Writes through a sibling temp file and a rename, so readers never see a
// half-written file.
bool WriteFile(const std::filesystem::path& path, std::string_view data);

}  // namespace testforge

#endif  // TESTFORGE_COMMON_FILE_H_
