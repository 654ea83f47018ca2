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

#include "testforge/testlang/diagnostic.h"

#include <algorithm>

namespace testforge::testlang {

std::string_view DiagCodeName(DiagCode code) {
  switch (code) {
    case DiagCode::kSyntaxError: return "SyntaxError";
    case DiagCode::kMissingRequired: return "MissingRequired";
    case DiagCode::kUnknownFieldKind: return "UnknownFieldKind";
    case DiagCode::kInvalidValue: return "InvalidValue";
    case DiagCode::kUnsupportedSchemaVersion: return "UnsupportedSchemaVersion";
    case DiagCode::kMissingEntryRecord: return "MissingEntryRecord";
    case DiagCode::kDuplicateRecord: return "DuplicateRecord";
    case DiagCode::kDuplicateField: return "DuplicateField";
    case DiagCode::kUnresolvedRecordRef: return "UnresolvedRecordRef";
    case DiagCode::kRecordCycle: return "RecordCycle";
    case DiagCode::kUnresolvedSizeRef: return "UnresolvedSizeRef";
    case DiagCode::kSizeRefNotPreceding: return "SizeRefNotPreceding";
    case DiagCode::kSizeRefNotInt: return "SizeRefNotInt";
    case DiagCode::kSharedSizeRef: return "SharedSizeRef";
    case DiagCode::kInvalidSize: return "InvalidSize";
    case DiagCode::kInvalidConstraint: return "InvalidConstraint";
    case DiagCode::kConstraintOutOfWidth: return "ConstraintOutOfWidth";
    case DiagCode::kUnsatisfiableField: return "UnsatisfiableField";
    case DiagCode::kAmbiguousLength: return "AmbiguousLength";
    case DiagCode::kUnknownGenerator: return "UnknownGenerator";
    case DiagCode::kUnknownEncoder: return "UnknownEncoder";
    case DiagCode::kUnsupportedKindForFdp: return "UnsupportedKindForFdp";
    case DiagCode::kUnconstrainedField: return "UnconstrainedField";
    case DiagCode::kUnusedRecord: return "UnusedRecord";
    case DiagCode::kEmptyRecord: return "EmptyRecord";
    case DiagCode::kPartialRedefinesEntry: return "PartialRedefinesEntry";
    case DiagCode::kUnresolvedInPartial: return "UnresolvedInPartial";
    case DiagCode::kMergeProducesInvalidDoc: return "MergeProducesInvalidDoc";
  }
  return "Unknown";
}

bool HasErrors(const Diagnostics& diags) { return CountErrors(diags) > 0; }

std::size_t CountErrors(const Diagnostics& diags) {
  return std::count_if(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::kError;
  });
}

std::string FormatDiagnostic(const Diagnostic& d) {
  std::string out = d.severity == Severity::kError ? "error" : "warning";
  out += " ";
  out += DiagCodeName(d.code);
  if (!d.path.empty()) out += " at " + d.path;
  if (!d.message.empty()) out += ": " + d.message;
  return out;
}

}  // namespace testforge::testlang
