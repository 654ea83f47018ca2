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

#ifndef TESTFORGE_DRIVER_DRIVER_H_
#define TESTFORGE_DRIVER_DRIVER_H_

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "testforge/common/expected.h"
#include "testforge/fdp/call.h"

namespace testforge::driver {

struct DriverConfig {
  std::vector<std::string> runner;
  std::vector<std::filesystem::path> docs;
  std::optional<std::filesystem::path> candidates;
  std::optional<std::filesystem::path> dictionary;
  // Loaded before the campaign and written back after it.
  std::optional<std::filesystem::path> corpus_dir;
  std::optional<std::filesystem::path> work_dir;
  std::optional<std::filesystem::path> event_log;
  std::uint64_t iterations = 1000;
  std::uint64_t seed = 0;
  double p_gen = 0.3;
  double p_crash = 0.2;
  double fallback_probability = 0.15;
  double recency_decay = 0.5;
  double deprioritized_factor = 0.1;
  std::int64_t exec_timeout_ms = 1000;
  std::int64_t generator_timeout_ms = 2000;
  std::uint64_t max_runner_failures = 5;
  bool timeout_is_crash = false;
  bool stop_on_crash = false;
  fdp::Dialect dialect = fdp::Dialect::kLlvm;
};

// Relative paths resolve against base_dir.
Expected<DriverConfig, std::string> ParseDriverConfig(std::string_view text,
                                                     const std::filesystem::path& base_dir);
Expected<DriverConfig, std::string> LoadDriverConfig(const std::filesystem::path& path);

struct StrategyCounts {
  std::uint64_t executions = 0;
  std::uint64_t adds = 0;
  std::uint64_t crashes = 0;
};

struct CampaignReport {
  std::uint64_t executions = 0;
  std::uint64_t adds = 0;
  std::uint64_t crashes = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t runner_failures = 0;
  std::optional<std::uint64_t> first_crash_iteration;
  std::vector<std::string> triggered_candidates;
  // Keyed by strategy name, plus "generate.coverage" and "generate.crash".
  std::map<std::string, StrategyCounts> per_strategy;
};

std::string ReportToText(const CampaignReport& report);

enum class DriverErrorCode {
  kConfig,
  kRunnerStartFailed,
  kRunnerProtocolError,
  kRunnerCrashLoop,
  kStorageFailure,
};
std::string_view DriverErrorCodeName(DriverErrorCode c);

struct DriverError {
  DriverErrorCode code;
  std::string message;
};

// Runs the campaign. One JSON line per iteration goes to `events`; the
// lines carry no timing, so a deterministic runner gives identical logs for
// identical configs.
Expected<CampaignReport, DriverError> RunLoop(const DriverConfig& config,
                                              std::ostream* events = nullptr);

}  // namespace testforge::driver

#endif  // TESTFORGE_DRIVER_DRIVER_H_
