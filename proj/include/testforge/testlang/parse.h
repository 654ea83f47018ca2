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

#ifndef TESTFORGE_TESTLANG_PARSE_H_
#define TESTFORGE_TESTLANG_PARSE_H_

#include <string>
#include <string_view>

#include "testforge/common/expected.h"
#include "testforge/testlang/diagnostic.h"
#include "testforge/testlang/doc.h"

namespace testforge::testlang {

// Parses a Testlang JSON document and resolves every default (endianness,
// mode, int width, size units). Structural problems are reported with a
// path to the offending node; semantic checks live in Validate().
Expected<TestlangDoc, Diagnostics> ParseTestlang(std::string_view text);

// Canonical text form: every default spelled out, stable key order.
// ParseTestlang(ToText(doc)) == doc.
std::string ToText(const TestlangDoc& doc);

// Identity of a document: hex SHA-256 prefix of its canonical text.
std::string DocId(const TestlangDoc& doc);

}  // namespace testforge::testlang

#endif  // TESTFORGE_TESTLANG_PARSE_H_
