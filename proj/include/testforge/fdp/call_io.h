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

#ifndef TESTFORGE_FDP_CALL_IO_H_
#define TESTFORGE_FDP_CALL_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "testforge/common/expected.h"
#include "testforge/fdp/call.h"

namespace testforge::fdp {

// Call-list document: either a JSON array of calls or {"calls": [...]}.
// Each call is an object with "op" and op-specific keys, e.g.
//   {"op": "int_in_range", "width": 16, "signed": false,
//    "min": 0, "max": 1000, "value": 1}
//   {"op": "string", "policy": "random_length", "max_length": 8,
//    "value": "ab\\cd"}
//   {"op": "remaining_bytes", "value": {"hex": "61626364"}}
// Every call may carry "checked" (default true). Integers may be written as
// JSON numbers or decimal/0x strings.
Expected<std::vector<FdpCall>, std::string> ParseCallList(std::string_view text);
std::string CallListToText(const std::vector<FdpCall>& calls);

}  // namespace testforge::fdp

#endif  // TESTFORGE_FDP_CALL_IO_H_
