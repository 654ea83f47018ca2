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

#include "testforge/driver/runner.h"

#include <json.hpp>

#include "testforge/common/file.h"

namespace testforge::driver {

using Json = nlohmann::json;

std::string_view RunStatusName(RunStatus s) {
  switch (s) {
    case RunStatus::kOk: return "ok";
    case RunStatus::kCrash: return "crash";
    case RunStatus::kTimeout: return "timeout";
  }
  return "unknown";
}

std::string_view RunnerErrorCodeName(RunnerErrorCode c) {
  switch (c) {
    case RunnerErrorCode::kStartFailed: return "RunnerStartFailed";
    case RunnerErrorCode::kProtocolError: return "RunnerProtocolError";
    case RunnerErrorCode::kRunnerDied: return "RunnerDied";
  }
  return "Unknown";
}

Expected<RunResult, RunnerError> ParseRunnerResponse(std::string_view line) {
  auto fail = [&](std::string why) {
    return MakeUnexpected(RunnerError{RunnerErrorCode::kProtocolError,
                                      why + ": " + std::string(line.substr(0, 200))});
  };
  Json j = Json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (!j.is_object()) return fail("response is not a JSON object");
  RunResult r;
  auto status = j.find("status");
  if (status == j.end() || !status->is_string()) return fail("missing status");
  if (*status == "ok") {
    r.status = RunStatus::kOk;
  } else if (*status == "crash") {
    r.status = RunStatus::kCrash;
  } else if (*status == "timeout") {
    r.status = RunStatus::kTimeout;
  } else {
    return fail("unknown status");
  }
  auto cov = j.find("coverage");
  if (cov == j.end()) return r;
  if (!cov->is_array()) return fail("coverage is not an array");
  for (const Json& entry : *cov) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
        !entry[1].is_number_integer() || entry[1].get<std::int64_t>() < 1 ||
        entry[1].get<std::int64_t>() > UINT32_MAX) {
      return fail("bad coverage entry");
    }
    r.coverage.insert({entry[0].get<std::string>(), entry[1].get<std::uint32_t>()});
  }
  return r;
}

Runner::Runner(std::vector<std::string> argv, std::filesystem::path work_dir,
               std::chrono::milliseconds timeout)
    : argv_(std::move(argv)), input_path_(work_dir / "input.bin"), timeout_(timeout) {}

Expected<void, RunnerError> Runner::Start() {
  child_.Kill();
  auto started = child_.Start(argv_);
  if (!started) return MakeUnexpected(RunnerError{RunnerErrorCode::kStartFailed, started.error()});
  if (starts_++ > 0) ++restarts_;
  return {};
}

Expected<RunResult, RunnerError> Runner::Invoke(ByteSpan input) {
  if (!child_.running()) {
    return MakeUnexpected(RunnerError{RunnerErrorCode::kRunnerDied, "runner is not running"});
  }
  if (!WriteFile(input_path_, ToString(input))) {
    return MakeUnexpected(
        RunnerError{RunnerErrorCode::kStartFailed, "cannot write " + input_path_.string()});
  }
  auto begin = std::chrono::steady_clock::now();
  if (!child_.WriteLine(Json{{"input_path", input_path_.string()}}.dump())) {
    child_.Kill();
    return MakeUnexpected(RunnerError{RunnerErrorCode::kRunnerDied, "runner closed its stdin"});
  }
  std::string line;
  auto status = child_.ReadLine(line, timeout_);
  auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - begin);
  if (status == ChildProcess::ReadStatus::kTimeout) {
    auto restarted = Start();
    if (!restarted) return MakeUnexpected(restarted.error());
    return RunResult{RunStatus::kTimeout, {}, wall};
  }
  if (status == ChildProcess::ReadStatus::kClosed) {
    child_.Kill();
    return MakeUnexpected(RunnerError{RunnerErrorCode::kRunnerDied, "runner exited mid-request"});
  }
  auto result = ParseRunnerResponse(line);
  if (result) result->wall = wall;
  return result;
}

}  // namespace testforge::driver
