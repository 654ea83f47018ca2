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

#include "testforge/testlang/merge.h"

#include "testforge/testlang/validate.h"

namespace testforge::testlang {

Expected<TestlangDoc, Diagnostics> MergePartial(const TestlangDoc& base,
                                                const TestlangDoc& partial) {
  if (base.is_partial || !partial.is_partial) {
    return MakeUnexpected(Diagnostics{
        {Severity::kError, DiagCode::kMergeProducesInvalidDoc, "is_partial",
         "merge needs a complete base and a partial overlay"}});
  }
  TestlangDoc merged = base;
  merged.is_partial = false;
  for (const Record& overlay : partial.records) {
    if (Record* existing = merged.FindRecord(overlay.name)) {
      *existing = overlay;
    } else {
      merged.records.push_back(overlay);
    }
  }
  Diagnostics diags = Validate(merged);
  if (HasErrors(diags)) {
    diags.insert(diags.begin(),
                 {Severity::kError, DiagCode::kMergeProducesInvalidDoc, "",
                  "merged document does not validate"});
    return MakeUnexpected(std::move(diags));
  }
  return merged;
}

}  // namespace testforge::testlang
