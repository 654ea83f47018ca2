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

#ifndef TESTFORGE_TESTS_FDP_REFERENCE_MIRROR_H_
#define TESTFORGE_TESTS_FDP_REFERENCE_MIRROR_H_

#include <string>
#include <variant>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/int128.h"
#include "testforge/fdp/call.h"

namespace testforge::fdp_reference {

using Value = std::variant<Int128, bool, double, Bytes>;

std::string ValueToString(const Value& v);

// Runs, on `blob`, the consume sequence a harness would execute to read the
// values `calls` produce.
std::vector<Value> ReferenceConsume(fdp::Dialect dialect, ByteSpan blob,
                                    const std::vector<fdp::FdpCall>& calls);

// The values `calls` ask for (what a checked encode must make the consumer
// return).
std::vector<Value> RequestedValues(const std::vector<fdp::FdpCall>& calls);

}  // namespace testforge::fdp_reference

#endif  // TESTFORGE_TESTS_FDP_REFERENCE_MIRROR_H_
