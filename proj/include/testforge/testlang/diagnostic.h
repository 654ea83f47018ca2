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

#ifndef TESTFORGE_TESTLANG_DIAGNOSTIC_H_
#define TESTFORGE_TESTLANG_DIAGNOSTIC_H_

#include <string>
#include <string_view>
#include <vector>

namespace testforge::testlang {

enum class Severity { kError, kWarning };

// Stable, machine-readable codes. The CLI prints DiagCodeName(); tests match
// on the enum.
enum class DiagCode {
  // Parse.
  kSyntaxError,
  kMissingRequired,
  kUnknownFieldKind,
  kInvalidValue,
  kUnsupportedSchemaVersion,
  // Validation errors.
  kMissingEntryRecord,
  kDuplicateRecord,
  kDuplicateField,
  kUnresolvedRecordRef,
  kRecordCycle,
  kUnresolvedSizeRef,
  kSizeRefNotPreceding,
  kSizeRefNotInt,
  kSharedSizeRef,
  kInvalidSize,
  kInvalidConstraint,
  kConstraintOutOfWidth,
  kUnsatisfiableField,
  kAmbiguousLength,
  kUnknownGenerator,
  kUnknownEncoder,
  kUnsupportedKindForFdp,
  // Validation warnings.
  kUnconstrainedField,
  kUnusedRecord,
  kEmptyRecord,
  kPartialRedefinesEntry,
  kUnresolvedInPartial,
  // Merge.
  kMergeProducesInvalidDoc,
};

std::string_view DiagCodeName(DiagCode code);

struct Diagnostic {
  Severity severity = Severity::kError;
  DiagCode code = DiagCode::kSyntaxError;
  // Path to the offending node, e.g. "records.Lookup.fields.table.size".
  std::string path;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

bool HasErrors(const Diagnostics& diags);
std::size_t CountErrors(const Diagnostics& diags);
std::string FormatDiagnostic(const Diagnostic& d);

}  // namespace testforge::testlang

#endif  // TESTFORGE_TESTLANG_DIAGNOSTIC_H_
