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

#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "testforge/scheduler/scheduler.h"

namespace testforge::scheduler {
namespace {

using testlang::SourceLine;

Coverage Lines(std::initializer_list<int> lines, const std::string& path = "a.c") {
  Coverage c;
  for (int l : lines) c.insert({path, static_cast<std::uint32_t>(l)});
  return c;
}

BugCandidate Cand(std::string id, Coverage vuln, Coverage key, std::int64_t priority = 1) {
  return {std::move(id), std::move(vuln), std::move(key), false, priority};
}

TEST(ScoreTest, SumsOverlapAcrossCandidates) {
  std::vector<BugCandidate> cands = {Cand("A", Lines({1}), Lines({10, 11, 12})),
                                     Cand("B", Lines({2}), Lines({20, 21}))};
  EXPECT_EQ(ScoreCoverage(Lines({10, 11, 20, 99}), cands), 3u);
  EXPECT_EQ(ScoreCoverage(Lines({50, 51}), cands), 0u);
}

TEST(ScoreTest, TriggeredCandidatesStopContributing) {
  std::vector<BugCandidate> cands = {Cand("A", Lines({1}), Lines({10, 11})),
                                     Cand("B", Lines({2}), Lines({20}))};
  Coverage cov = Lines({10, 11, 20});
  EXPECT_EQ(ScoreCoverage(cov, cands), 3u);
  cands[0].triggered = true;
  EXPECT_EQ(ScoreCoverage(cov, cands), 1u);
}

TEST(ScoreTest, PriorityMultiplies) {
  std::vector<BugCandidate> cands = {Cand("A", Lines({1}), Lines({10, 11}), 3)};
  EXPECT_EQ(ScoreCoverage(Lines({10, 11}), cands), 6u);
}

TEST(ScoreTest, PathsMatter) {
  std::vector<BugCandidate> cands = {Cand("A", Lines({1}), Lines({10}))};
  EXPECT_EQ(ScoreCoverage(Lines({10}, "b.c"), cands), 0u);
}

TEST(ScoreTest, ScoresFollowThePool) {
  corpus::Corpus pool;
  ASSERT_TRUE(pool.Add(ToBytes("a"), corpus::Origin::kExternal, std::nullopt, Lines({10}), false));
  ASSERT_TRUE(pool.Add(ToBytes("b"), corpus::Origin::kExternal, std::nullopt, Lines({10, 11, 30}), false));
  std::vector<BugCandidate> cands = {Cand("A", Lines({1}), Lines({10, 11}))};
  auto scores = ScoreSeeds(pool, cands);
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_EQ(scores[0].score, 1u);
  EXPECT_EQ(scores[1].score, 2u);
  EXPECT_EQ(scores[1].seed_id, pool.entries()[1].id);
}

TEST(MarkTriggeredTest, VulnerableLineTriggers) {
  std::vector<BugCandidate> cands = {Cand("A", Lines({5}), Lines({10}))};
  EXPECT_EQ(MarkTriggered(cands, Lines({5, 6})), std::vector<std::string>{"A"});
  EXPECT_TRUE(cands[0].triggered);
  // Already triggered: nothing flips again.
  EXPECT_TRUE(MarkTriggered(cands, Lines({5})).empty());
}

TEST(MarkTriggeredTest, KeyLinesAloneDoNot) {
  std::vector<BugCandidate> cands = {Cand("A", Lines({5}), Lines({10}))};
  EXPECT_TRUE(MarkTriggered(cands, Lines({10})).empty());
  EXPECT_FALSE(cands[0].triggered);
}

TEST(MarkTriggeredTest, SharedVulnerableLineTriggersBoth) {
  std::vector<BugCandidate> cands = {Cand("A", Lines({5, 6}), {}), Cand("B", Lines({6, 7}), {}),
                                     Cand("C", Lines({8}), {})};
  EXPECT_EQ(MarkTriggered(cands, Lines({6})), (std::vector<std::string>{"A", "B"}));
  EXPECT_FALSE(cands[2].triggered);
}

TEST(CandidatesTest, ParseAndRoundTrip) {
  auto c = ParseCandidates(R"({"candidates": [
      {"id": "A", "vulnerable_lines": [["a.c", 5]], "key_lines": [["a.c", 10], ["b.c", 3]],
       "priority": 2}]})");
  ASSERT_TRUE(c) << c.error();
  ASSERT_EQ(c->size(), 1u);
  EXPECT_EQ((*c)[0].priority, 2);
  EXPECT_EQ((*c)[0].key_lines.size(), 2u);
  auto again = ParseCandidates(CandidatesToText(*c));
  ASSERT_TRUE(again);
  EXPECT_EQ(*again, *c);
}

TEST(CandidatesTest, RejectsBadLines) {
  EXPECT_FALSE(ParseCandidates(R"([{"id": "A", "vulnerable_lines": [["a.c", 0]], "key_lines": []}])"));
  EXPECT_FALSE(ParseCandidates(R"([{"id": "A", "vulnerable_lines": [], "key_lines": [], "priority": -1}])"));
  EXPECT_FALSE(ParseCandidates("not json"));
}

TEST(SelectSeedTest, EmptyPool) {
  Rng rng(1);
  auto r = SelectSeed({}, rng);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error(), SchedError::kEmptyPool);
}

TEST(SelectSeedTest, AllZeroIsUniform) {
  std::vector<std::uint64_t> scores(4, 0);
  Rng rng(2);
  std::array<int, 4> counts{};
  constexpr int kDraws = 40000;
  for (int i = 0; i < kDraws; ++i) ++counts[SelectSeed(scores, rng)->index];
  for (int c : counts) EXPECT_NEAR(c / double(kDraws), 0.25, 0.015);
}

TEST(SelectSeedTest, BranchProportions) {
  std::vector<std::uint64_t> scores = {0, 1, 3, 0, 7};
  Rng rng(3);
  constexpr int kDraws = 100000;
  std::array<double, 3> counts{};
  for (int i = 0; i < kDraws; ++i) ++counts[static_cast<int>(SelectSeed(scores, rng)->branch)];
  const std::array<double, 3> expected = {0.25, 0.25, 0.5};
  double chi2 = 0;
  for (int b = 0; b < 3; ++b) {
    EXPECT_NEAR(counts[b] / kDraws, expected[b], 0.015);
    double e = expected[b] * kDraws;
    chi2 += (counts[b] - e) * (counts[b] - e) / e;
  }
  boost::math::chi_squared dist(2);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.01);
}

TEST(SelectSeedTest, PositiveBranchOnlyPicksScoredSeeds) {
  std::vector<std::uint64_t> scores = {0, 5, 0, 2};
  Rng rng(4);
  for (int i = 0; i < 5000; ++i) {
    auto p = SelectSeed(scores, rng);
    if (p->branch == SeedBranch::kPositive) EXPECT_GT(scores[p->index], 0u);
  }
}

TEST(SelectSeedTest, WeightedBranchRatio) {
  // Only the weighted branch, to measure its frequencies directly.
  SeedMix weighted_only{0.0, 0.0, 1.0};
  std::vector<std::uint64_t> scores = {1, 3};
  Rng rng(5);
  constexpr int kDraws = 100000;
  std::array<int, 2> counts{};
  for (int i = 0; i < kDraws; ++i) ++counts[SelectSeed(scores, rng, weighted_only)->index];
  double ratio = static_cast<double>(counts[1]) / counts[0];
  EXPECT_NEAR(ratio, 2.0, 2.0 * 0.03);
}

TEST(SelectSeedTest, MoreKeyCoverageNeverLowersWeight) {
  std::vector<std::uint64_t> low = {0, 2}, high = {0, 5};
  Rng a(6), b(6);
  int low_hits = 0, high_hits = 0;
  for (int i = 0; i < 20000; ++i) {
    low_hits += SelectSeed(low, a)->index == 1;
    high_hits += SelectSeed(high, b)->index == 1;
  }
  EXPECT_GE(high_hits, low_hits);
}

testlang::TestlangDoc DocWith(std::uint64_t seq, bool deprioritized = false) {
  testlang::TestlangDoc d;
  d.metadata.created_seq = seq;
  d.metadata.deprioritized = deprioritized;
  return d;
}

TEST(SelectTestlangTest, SingleDocCountsUses) {
  std::vector<testlang::TestlangDoc> pool = {DocWith(0)};
  Rng rng(1);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(*SelectTestlang(pool, rng), 0u);
  EXPECT_EQ(pool[0].metadata.use_count, 5u);
}

TEST(SelectTestlangTest, DeprioritizedTenToOne) {
  std::vector<testlang::TestlangDoc> pool = {DocWith(0), DocWith(0, true)};
  Rng rng(2);
  std::array<int, 2> counts{};
  for (int i = 0; i < 10000; ++i) ++counts[*SelectTestlang(pool, rng, {}, false)];
  ASSERT_GT(counts[1], 0);
  double ratio = static_cast<double>(counts[0]) / counts[1];
  EXPECT_NEAR(ratio, 10.0, 1.0);
}

TEST(SelectTestlangTest, NewestIsModal) {
  std::vector<testlang::TestlangDoc> pool = {DocWith(1), DocWith(3), DocWith(2)};
  Rng rng(3);
  std::array<int, 3> counts{};
  for (int i = 0; i < 10000; ++i) ++counts[*SelectTestlang(pool, rng, {}, false)];
  EXPECT_GT(counts[1], counts[0]);
  EXPECT_GT(counts[1], counts[2]);
}

TEST(SelectTestlangTest, WeightFormula) {
  testlang::DocMetadata m;
  EXPECT_DOUBLE_EQ(TestlangWeight(0, m), 1.0);
  EXPECT_DOUBLE_EQ(TestlangWeight(2, m), 0.5);
  m.deprioritized = true;
  m.use_count = 1;
  EXPECT_DOUBLE_EQ(TestlangWeight(0, m), 0.05);
}

TEST(SelectTestlangTest, EmptyPool) {
  std::vector<testlang::TestlangDoc> pool;
  Rng rng(1);
  EXPECT_FALSE(SelectTestlang(pool, rng));
}

}  // namespace
}  // namespace testforge::scheduler
