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

#include <gtest/gtest.h>

#include <sstream>

#include "support/test_util.h"
#include "testforge/corpus/corpus.h"
#include "testforge/driver/driver.h"
#include "testforge/driver/runner.h"

namespace testforge::driver {
namespace {

using test_support::DataPath;
using test_support::TempDir;

DriverConfig Config(const std::string& mode, std::uint64_t iterations, const TempDir& dir) {
  DriverConfig c;
  c.runner = {TESTFORGE_FIXTURE_RUNNER, mode};
  c.docs = {DataPath("toy.json")};
  c.work_dir = dir.path() / "work";
  c.iterations = iterations;
  c.seed = 1;
  return c;
}

TEST(RunnerResponseTest, ParsesStatusAndCoverage) {
  auto r = ParseRunnerResponse(R"({"status": "crash", "coverage": [["a.c", 3], ["b.c", 1]]})");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, RunStatus::kCrash);
  EXPECT_EQ(r->coverage.size(), 2u);
  EXPECT_FALSE(ParseRunnerResponse("garbage"));
  EXPECT_FALSE(ParseRunnerResponse(R"({"status": "weird", "coverage": []})"));
  EXPECT_FALSE(ParseRunnerResponse(R"({"status": "ok", "coverage": [["a.c", 0]]})"));
}

TEST(RunnerTest, EchoRunnerReturnsScriptedResponse) {
  TempDir dir;
  Runner runner({TESTFORGE_FIXTURE_RUNNER, "echo"}, dir.path(), std::chrono::milliseconds(2000));
  ASSERT_TRUE(runner.Start());
  auto r = runner.Invoke(ToBytes(R"({"status": "crash", "coverage": [["x.c", 7]]})"));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, RunStatus::kCrash);
  EXPECT_EQ(r->coverage, (corpus::Coverage{{"x.c", 7}}));
  auto plain = runner.Invoke(ToBytes("AB"));
  ASSERT_TRUE(plain);
  EXPECT_EQ(plain->status, RunStatus::kOk);
  EXPECT_EQ(plain->coverage.size(), 2u);
}

TEST(RunnerTest, SlowRunnerTimesOutAndRestarts) {
  TempDir dir;
  Runner runner({TESTFORGE_FIXTURE_RUNNER, "sleep", "2000"}, dir.path(), std::chrono::milliseconds(100));
  ASSERT_TRUE(runner.Start());
  auto r = runner.Invoke(ToBytes("x"));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, RunStatus::kTimeout);
  EXPECT_EQ(runner.restarts(), 1u);
}

TEST(RunnerTest, MissingBinaryFailsToStart) {
  TempDir dir;
  Runner runner({"/nonexistent/runner"}, dir.path(), std::chrono::milliseconds(100));
  auto s = runner.Start();
  if (s) {
    // Spawn can succeed before exec fails; the first request then sees the death.
    auto r = runner.Invoke(ToBytes("x"));
    ASSERT_FALSE(r);
  } else {
    EXPECT_EQ(s.error().code, RunnerErrorCode::kStartFailed);
  }
}

TEST(RunLoopTest, ZeroIterationsIsAnEmptyReport) {
  TempDir dir;
  std::ostringstream events;
  auto r = RunLoop(Config("echo", 0, dir), &events);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->executions, 0u);
  EXPECT_EQ(r->adds, 0u);
  EXPECT_TRUE(events.str().empty());
}

TEST(RunLoopTest, EventLogsAreDeterministic) {
  TempDir a, b;
  std::ostringstream ea, eb;
  auto config = Config("echo", 150, a);
  config.dictionary = DataPath("toy.dict");
  ASSERT_TRUE(RunLoop(config, &ea));
  config.work_dir = b.path() / "work";
  ASSERT_TRUE(RunLoop(config, &eb));
  EXPECT_FALSE(ea.str().empty());
  EXPECT_EQ(ea.str(), eb.str());
  config.seed = 2;
  std::ostringstream ec;
  ASSERT_TRUE(RunLoop(config, &ec));
  EXPECT_NE(ea.str(), ec.str());
}

TEST(RunLoopTest, EmptyCoverageAddsNothing) {
  TempDir dir;
  auto config = Config("blind", 200, dir);
  config.dictionary = DataPath("toy.dict");
  config.corpus_dir = dir.path() / "corpus";
  auto r = RunLoop(config);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->executions, 200u);
  EXPECT_EQ(r->adds, 0u);
  EXPECT_TRUE(corpus::Corpus::Load(*config.corpus_dir).corpus.empty());
}

TEST(RunLoopTest, MalformedResponseIsProtocolError) {
  TempDir dir;
  auto config = Config("bad", 1, dir);
  auto r = RunLoop(config);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().code, DriverErrorCode::kRunnerProtocolError);
}

TEST(RunLoopTest, TimeoutsAreCounted) {
  TempDir dir;
  auto config = Config("sleep", 2, dir);
  config.runner.push_back("2000");
  config.exec_timeout_ms = 50;
  auto r = RunLoop(config);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->timeouts, 2u);
  EXPECT_EQ(r->crashes, 0u);
  config.timeout_is_crash = true;
  r = RunLoop(config);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->crashes, 2u);
}

TEST(RunLoopTest, DyingRunnerBecomesCrashLoop) {
  TempDir dir;
  auto config = Config("die", 20, dir);
  config.max_runner_failures = 3;
  auto r = RunLoop(config);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().code, DriverErrorCode::kRunnerCrashLoop);
}

TEST(RunLoopTest, FindsTheToyBug) {
  TempDir dir;
  auto config = Config("toy", 5000, dir);
  config.dictionary = DataPath("toy.dict");
  config.candidates = DataPath("toy_candidates.json");
  config.stop_on_crash = true;
  auto r = RunLoop(config);
  ASSERT_TRUE(r);
  ASSERT_TRUE(r->first_crash_iteration);
  EXPECT_EQ(r->crashes, 1u);
  EXPECT_EQ(r->executions, *r->first_crash_iteration + 1);
  EXPECT_EQ(r->triggered_candidates, std::vector<std::string>{"toy-bug"});
}

TEST(RunLoopTest, CorpusIsPersistedAndReloaded) {
  TempDir dir;
  auto config = Config("toy", 100, dir);
  config.corpus_dir = dir.path() / "corpus";
  auto first = RunLoop(config);
  ASSERT_TRUE(first);
  auto loaded = corpus::Corpus::Load(*config.corpus_dir);
  EXPECT_TRUE(loaded.corrupt.empty());
  EXPECT_EQ(loaded.corpus.size(), first->adds);
  EXPECT_GT(loaded.corpus.size(), 0u);
  // A second campaign starts from the stored corpus, so the pool only grows.
  ASSERT_TRUE(RunLoop(config));
  EXPECT_GE(corpus::Corpus::Load(*config.corpus_dir).corpus.size(), loaded.corpus.size());
}

TEST(ConfigTest, ParsesAndResolvesPaths) {
  auto c = ParseDriverConfig(R"({"runner": ["./run.sh", "--fast"], "docs": ["a.json"],
      "dictionary": "/abs/dict", "iterations": 7, "seed": 9, "dialect": "jazzer"})",
                             "/base");
  ASSERT_TRUE(c) << c.error();
  EXPECT_EQ(c->runner[0], "/base/run.sh");
  EXPECT_EQ(c->runner[1], "--fast");
  EXPECT_EQ(c->docs[0], std::filesystem::path("/base/a.json"));
  EXPECT_EQ(*c->dictionary, std::filesystem::path("/abs/dict"));
  EXPECT_EQ(c->iterations, 7u);
  EXPECT_EQ(c->seed, 9u);
  EXPECT_EQ(c->dialect, fdp::Dialect::kJazzer);
}

TEST(ConfigTest, RejectsUnknownKeysAndMissingFields) {
  EXPECT_FALSE(ParseDriverConfig(R"({"runner": ["x"], "docs": [], "bogus": 1})", "/"));
  EXPECT_FALSE(ParseDriverConfig(R"({"docs": ["a.json"]})", "/"));
  EXPECT_FALSE(ParseDriverConfig("[", "/"));
}

TEST(RunLoopTest, BadDocIsAConfigError) {
  TempDir dir;
  auto config = Config("echo", 1, dir);
  config.docs = {dir.path() / "missing.json"};
  auto r = RunLoop(config);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().code, DriverErrorCode::kConfig);
}

}  // namespace
}  // namespace testforge::driver
