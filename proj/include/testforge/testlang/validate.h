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

#ifndef TESTFORGE_TESTLANG_VALIDATE_H_
#define TESTFORGE_TESTLANG_VALIDATE_H_

#include "testforge/testlang/diagnostic.h"
#include "testforge/testlang/doc.h"

namespace testforge::testlang {

// Checks every document invariant. Errors make the document unusable for
// generation; warnings (unconstrained fields, unused records, ...) do not.
// For partial documents, references that may resolve against a base are
// downgraded to warnings and the entry record is not required.
Diagnostics Validate(const TestlangDoc& doc);

}  // namespace testforge::testlang

#endif  // TESTFORGE_TESTLANG_VALIDATE_H_
