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

#ifndef TESTFORGE_DRIVER_RUNNER_H_
#define TESTFORGE_DRIVER_RUNNER_H_

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "testforge/common/bytes.h"
#include "testforge/common/expected.h"
#include "testforge/common/subprocess.h"
#include "testforge/corpus/corpus.h"

namespace testforge::driver {

enum class RunStatus { kOk, kCrash, kTimeout };
std::string_view RunStatusName(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::kOk;
  corpus::Coverage coverage;
  std::chrono::milliseconds wall{0};
};

enum class RunnerErrorCode { kStartFailed, kProtocolError, kRunnerDied };
std::string_view RunnerErrorCodeName(RunnerErrorCode c);

struct RunnerError {
  RunnerErrorCode code;
  std::string message;
};

// Parses one response line:
//   {"status": "ok"|"crash"|"timeout", "coverage": [["path", line], ...]}
Expected<RunResult, RunnerError> ParseRunnerResponse(std::string_view line);

// A persistent target runner. Each invocation writes the input to a file,
// sends {"input_path": ...} and waits for one response line.
class Runner {
 public:
  Runner(std::vector<std::string> argv, std::filesystem::path work_dir,
         std::chrono::milliseconds timeout);

  Expected<void, RunnerError> Start();

  // On timeout the runner is killed and restarted and the result has status
  // kTimeout. kRunnerDied leaves the runner stopped; call Start() again.
  Expected<RunResult, RunnerError> Invoke(ByteSpan input);

  std::size_t restarts() const { return restarts_; }

 private:
  std::vector<std::string> argv_;
  std::filesystem::path input_path_;
  std::chrono::milliseconds timeout_;
  ChildProcess child_;
  std::size_t starts_ = 0;
  std::size_t restarts_ = 0;
};

}  // namespace testforge::driver

#endif  // TESTFORGE_DRIVER_RUNNER_H_
