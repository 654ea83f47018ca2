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

#ifndef TESTFORGE_SCHEDULER_SCHEDULER_H_
#define TESTFORGE_SCHEDULER_SCHEDULER_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "testforge/common/expected.h"
#include "testforge/common/rng.h"
#include "testforge/corpus/corpus.h"
#include "testforge/testlang/doc.h"

namespace testforge::scheduler {

using corpus::Coverage;

struct BugCandidate {
  std::string id;
  Coverage vulnerable_lines;
  Coverage key_lines;
  bool triggered = false;
  std::int64_t priority = 1;

  bool operator==(const BugCandidate&) const = default;
};

// Candidate file: a JSON list of {id, vulnerable_lines, key_lines, priority,
// triggered}; lines are ["path", line] pairs with 1-based lines.
Expected<std::vector<BugCandidate>, std::string> ParseCandidates(std::string_view text);
std::string CandidatesToText(std::span<const BugCandidate> candidates);

struct SeedScore {
  std::string seed_id;
  std::uint64_t score = 0;
  bool stale = false;
};

// Sum over active candidates of priority * |coverage & key_lines|.
std::uint64_t ScoreCoverage(const Coverage& coverage, std::span<const BugCandidate> candidates);
std::vector<SeedScore> ScoreSeeds(const corpus::Corpus& pool,
                                  std::span<const BugCandidate> candidates);

// Flags every active candidate with a vulnerable line in crash_coverage.
// Returns the ids that flipped.
std::vector<std::string> MarkTriggered(std::vector<BugCandidate>& candidates,
                                       const Coverage& crash_coverage);

enum class SchedError { kEmptyPool };
std::string_view SchedErrorName(SchedError e);

enum class SeedBranch { kUniform, kPositive, kWeighted };
std::string_view SeedBranchName(SeedBranch b);

struct SeedPick {
  std::size_t index = 0;
  SeedBranch branch = SeedBranch::kUniform;
};

struct SeedMix {
  double uniform = 0.25;
  double positive = 0.25;  // the rest goes to the weighted branch
  double epsilon = 1.0;
};

// scores[i] belongs to pool entry i.
Expected<SeedPick, SchedError> SelectSeed(std::span<const std::uint64_t> scores, Rng& rng,
                                          const SeedMix& mix = {});

struct TestlangWeights {
  double recency_decay = 0.5;
  double deprioritized_factor = 0.1;
};

// rank: number of docs strictly newer than this one.
double TestlangWeight(std::size_t rank, const testlang::DocMetadata& meta,
                      const TestlangWeights& weights = {});

// Bumps the chosen doc's use_count unless record is false.
Expected<std::size_t, SchedError> SelectTestlang(std::span<testlang::TestlangDoc> pool, Rng& rng,
                                                 const TestlangWeights& weights = {},
                                                 bool record = true);

}  // namespace testforge::scheduler

#endif  // TESTFORGE_SCHEDULER_SCHEDULER_H_
