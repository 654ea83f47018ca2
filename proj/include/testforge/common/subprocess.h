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

#ifndef TESTFORGE_COMMON_SUBPROCESS_H_
#define TESTFORGE_COMMON_SUBPROCESS_H_

#include <sys/types.h>

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/expected.h"

namespace testforge {

using EnvOverrides = std::map<std::string, std::string>;

struct CommandLimits {
  std::chrono::milliseconds timeout{5000};
  std::size_t max_output = 1 << 20;
};

struct CommandResult {
  enum class Outcome { kExited, kSignaled, kTimeout, kOutputTooLarge };
  Outcome outcome = Outcome::kExited;
  // Exit code for kExited, signal number for kSignaled.
  int status = 0;
  Bytes output;
};

// Runs argv[0] (PATH lookup) to completion and captures stdout. stdin and
// stderr are /dev/null. Errors only when the process cannot be started.
Expected<CommandResult, std::string> RunCommand(const std::vector<std::string>& argv,
                                                const EnvOverrides& env,
                                                const CommandLimits& limits);

// A long-lived child spoken to over line-delimited stdio.
class ChildProcess {
 public:
  ChildProcess() = default;
  ~ChildProcess();
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  Expected<void, std::string> Start(const std::vector<std::string>& argv,
                                    const EnvOverrides& env = {});
  bool running() const { return pid_ > 0; }

  // Writes `line` plus a newline. False when the child is gone.
  bool WriteLine(const std::string& line);

  enum class ReadStatus { kLine, kTimeout, kClosed };
  // Reads one line (without the newline).
  ReadStatus ReadLine(std::string& line, std::chrono::milliseconds timeout);

  // SIGKILL and reap.
  void Kill();

 private:
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

}  // namespace testforge

#endif  // TESTFORGE_COMMON_SUBPROCESS_H_
