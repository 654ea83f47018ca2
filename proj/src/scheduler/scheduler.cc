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

#include "testforge/scheduler/scheduler.h"

#include <algorithm>
#include <cmath>
#include <json.hpp>

namespace testforge::scheduler {

using Json = nlohmann::ordered_json;

namespace {

Coverage LinesFromJson(const Json& j) {
  Coverage out;
  for (const Json& line : j) {
    auto n = line.at(1).get<std::int64_t>();
    if (n < 1) throw std::invalid_argument("line numbers are 1-based");
    out.insert({line.at(0).get<std::string>(), static_cast<std::uint32_t>(n)});
  }
  return out;
}

Json LinesToJson(const Coverage& lines) {
  Json out = Json::array();
  for (const auto& l : lines) out.push_back(Json::array({l.path, l.line}));
  return out;
}

std::uint64_t Overlap(const Coverage& a, const Coverage& b) {
  std::uint64_t n = 0;
  for (const auto& line : b) n += a.count(line);
  return n;
}

}  // namespace

Expected<std::vector<BugCandidate>, std::string> ParseCandidates(std::string_view text) {
  try {
    Json j = Json::parse(text.begin(), text.end());
    if (j.is_object()) j = j.at("candidates");
    std::vector<BugCandidate> out;
    for (const Json& c : j) {
      BugCandidate b;
      b.id = c.at("id").get<std::string>();
      b.vulnerable_lines = LinesFromJson(c.at("vulnerable_lines"));
      b.key_lines = LinesFromJson(c.value("key_lines", Json::array()));
      b.priority = c.value("priority", std::int64_t{1});
      b.triggered = c.value("triggered", false);
      if (b.priority < 0) return MakeUnexpected("candidate " + b.id + ": negative priority");
      out.push_back(std::move(b));
    }
    return out;
  } catch (const std::exception& e) {
    return MakeUnexpected(std::string(e.what()));
  }
}

std::string CandidatesToText(std::span<const BugCandidate> candidates) {
  Json out = Json::array();
  for (const BugCandidate& c : candidates) {
    out.push_back({{"id", c.id},
                   {"vulnerable_lines", LinesToJson(c.vulnerable_lines)},
                   {"key_lines", LinesToJson(c.key_lines)},
                   {"priority", c.priority},
                   {"triggered", c.triggered}});
  }
  return out.dump(2) + "\n";
}

std::uint64_t ScoreCoverage(const Coverage& coverage, std::span<const BugCandidate> candidates) {
  std::uint64_t score = 0;
  for (const BugCandidate& c : candidates) {
    if (c.triggered) continue;
    score += static_cast<std::uint64_t>(c.priority) * Overlap(coverage, c.key_lines);
  }
  return score;
}

std::vector<SeedScore> ScoreSeeds(const corpus::Corpus& pool,
                                  std::span<const BugCandidate> candidates) {
  std::vector<SeedScore> out;
  out.reserve(pool.size());
  for (const auto& e : pool.entries()) out.push_back({e.id, ScoreCoverage(e.coverage, candidates)});
  return out;
}

std::vector<std::string> MarkTriggered(std::vector<BugCandidate>& candidates,
                                       const Coverage& crash_coverage) {
  std::vector<std::string> flipped;
  for (BugCandidate& c : candidates) {
    if (c.triggered || Overlap(crash_coverage, c.vulnerable_lines) == 0) continue;
    c.triggered = true;
    flipped.push_back(c.id);
  }
  return flipped;
}

std::string_view SchedErrorName(SchedError) { return "EmptyPool"; }

std::string_view SeedBranchName(SeedBranch b) {
  switch (b) {
    case SeedBranch::kUniform: return "uniform";
    case SeedBranch::kPositive: return "positive";
    case SeedBranch::kWeighted: return "weighted";
  }
  return "unknown";
}

Expected<SeedPick, SchedError> SelectSeed(std::span<const std::uint64_t> scores, Rng& rng,
                                          const SeedMix& mix) {
  if (scores.empty()) return MakeUnexpected(SchedError::kEmptyPool);
  double u = rng.UnitDouble();
  if (u < mix.uniform) return SeedPick{rng.Index(scores.size()), SeedBranch::kUniform};
  if (u < mix.uniform + mix.positive) {
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] > 0) positive.push_back(i);
    }
    std::size_t index = positive.empty() ? rng.Index(scores.size())
                                         : positive[rng.Index(positive.size())];
    return SeedPick{index, SeedBranch::kPositive};
  }
  std::vector<double> weights(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    weights[i] = static_cast<double>(scores[i]) + mix.epsilon;
  }
  return SeedPick{rng.Weighted(weights), SeedBranch::kWeighted};
}

double TestlangWeight(std::size_t rank, const testlang::DocMetadata& meta,
                      const TestlangWeights& weights) {
  double w = std::exp2(-weights.recency_decay * static_cast<double>(rank));
  if (meta.deprioritized) w *= weights.deprioritized_factor;
  return w / (1.0 + static_cast<double>(meta.use_count));
}

Expected<std::size_t, SchedError> SelectTestlang(std::span<testlang::TestlangDoc> pool, Rng& rng,
                                                 const TestlangWeights& weights, bool record) {
  if (pool.empty()) return MakeUnexpected(SchedError::kEmptyPool);
  std::vector<double> w(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    std::size_t rank = std::count_if(pool.begin(), pool.end(), [&](const auto& d) {
      return d.metadata.created_seq > pool[i].metadata.created_seq;
    });
    w[i] = TestlangWeight(rank, pool[i].metadata, weights);
  }
  std::size_t pick = rng.Weighted(w);
  if (record) ++pool[pick].metadata.use_count;
  return pick;
}

}  // namespace testforge::scheduler
