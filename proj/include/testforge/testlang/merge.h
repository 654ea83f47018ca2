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

#ifndef TESTFORGE_TESTLANG_MERGE_H_
#define TESTFORGE_TESTLANG_MERGE_H_

#include "testforge/common/expected.h"
#include "testforge/testlang/diagnostic.h"
#include "testforge/testlang/doc.h"

namespace testforge::testlang {

// Record-granular overlay: partial records replace base records of the same
// name, partial-only records are appended, and the result is a complete
// document. Rejected with the validator's diagnostics (prefixed by a
// MergeProducesInvalidDoc entry) if the result does not validate.
Expected<TestlangDoc, Diagnostics> MergePartial(const TestlangDoc& base,
                                                const TestlangDoc& partial);

}  // namespace testforge::testlang

#endif  // TESTFORGE_TESTLANG_MERGE_H_
