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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fdp_reference/mirror.h"
#include "support/oracles.h"
#include "support/random_calls.h"
#include "support/test_util.h"
#include "testforge/corpus/corpus.h"
#include "testforge/driver/driver.h"
#include "testforge/fdp/call_io.h"
#include "testforge/fdp/encoder.h"
#include "testforge/scheduler/scheduler.h"
#include "testforge/serializer/generate.h"
#include "testforge/testlang/merge.h"
#include "testforge/testlang/structure_check.h"

namespace testforge::acceptance {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using fdp::Dialect;
using test_support::DataPath;
using test_support::LoadDataDoc;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

// 1,000 random checked call lists per dialect decode through the reference
// consumer to exactly the requested values.
Outcome FdpRoundTrip() {
  constexpr int kLists = 1000;
  constexpr double kBudgetSeconds = 10.0;
  auto start = Clock::now();
  int failures = 0;
  std::string first;
  for (Dialect d : {Dialect::kLlvm, Dialect::kJazzer}) {
    Rng rng(d == Dialect::kLlvm ? 101 : 202);
    for (int i = 0; i < kLists; ++i) {
      auto calls = test_support::RandomCallList(d, rng);
      auto blob = fdp::Encode(d, calls);
      bool ok = blob && fdp_reference::ReferenceConsume(d, *blob, calls) ==
                            fdp_reference::RequestedValues(calls);
      if (!ok && failures++ == 0) {
        first = std::string(fdp::DialectName(d)) + " list " + std::to_string(i);
      }
    }
  }
  double secs = Seconds(start);
  Outcome o;
  o.pass = failures == 0 && secs < kBudgetSeconds;
  o.detail = std::to_string(2 * kLists) + " lists, " + std::to_string(failures) + " failures, " +
             Fmt("%.2f s", secs) + (first.empty() ? "" : ", first: " + first);
  return o;
}

// The five-value example: (1, 128, true, 1, "abcd").
Outcome ExampleHarness() {
  using fdp_reference::Value;
  const std::vector<Value> want = {Int128{1}, Int128{128}, true, Int128{1}, ToBytes("abcd")};
  std::vector<std::string> notes;
  bool pass = true;
  for (Dialect d : {Dialect::kLlvm, Dialect::kJazzer}) {
    // Jazzer consumers are signed, so a and b use 16-bit signed integers there.
    bool jazzer = d == Dialect::kJazzer;
    std::vector<fdp::FdpCall> calls = {
        {fdp::ProduceIntInRange{16, jazzer, 0, 1000, 1}},
        {fdp::ProduceInt{jazzer ? 16 : 8, jazzer, 128}},
        {fdp::ProduceBool{true}},
        {fdp::ProduceIntInRange{32, true, 0, 3, 1}},
        {fdp::ProduceRemainingBytes{ToBytes("abcd")}},
    };
    auto blob = fdp::Encode(d, calls);
    bool ok = blob && fdp_reference::ReferenceConsume(d, *blob, calls) == want;
    pass &= ok;
    notes.push_back(std::string(fdp::DialectName(d)) + (ok ? " ok" : " mismatch"));
  }
  return {pass, notes[0] + ", " + notes[1]};
}

// A producer after remaining_bytes fails with ProduceAfterExhaustion at its index.
Outcome BadExample() {
  std::vector<fdp::FdpCall> calls = {{fdp::ProduceInt{32, false, 7}},
                                     {fdp::ProduceRemainingBytes{ToBytes("tail")}},
                                     {fdp::ProduceInt{32, false, 1}}};
  bool pass = true;
  std::string detail;
  for (Dialect d : {Dialect::kLlvm, Dialect::kJazzer}) {
    if (d == Dialect::kJazzer) {
      calls[0] = {fdp::ProduceInt{32, true, 7}};
      calls[2] = {fdp::ProduceInt{32, true, 1}};
    }
    auto blob = fdp::Encode(d, calls);
    bool ok = !blob && blob.error().code == fdp::FdpErrorCode::kProduceAfterExhaustion &&
              blob.error().call_index == 2;
    pass &= ok;
    detail += std::string(detail.empty() ? "" : ", ") + std::string(fdp::DialectName(d)) + " " +
              (blob ? std::string("encoded") : std::string(fdp::FdpErrorCodeName(blob.error().code)) +
                                                    " at " + std::to_string(blob.error().call_index));
  }
  return {pass, detail};
}

// Every coverage output parses; every crash output fails on exactly its field.
Outcome GenerationValidity() {
  int coverage_bad = 0, crash_bad = 0, total = 0;
  std::string first;
  for (const auto& name : test_support::GoldenDocNames()) {
    auto doc = LoadDataDoc(name);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ++total;
      auto cov = serializer::Generate(doc, Rng(seed), testlang::GenMode::kCoverage);
      if (!cov || !testlang::StructureCheck(doc, cov->bytes)) {
        if (coverage_bad++ == 0 && first.empty()) first = name + " coverage seed " + std::to_string(seed);
      }
      auto crash = serializer::Generate(doc, Rng(seed), testlang::GenMode::kCrash);
      bool ok = crash && crash->ast.violated_fields.size() == 1;
      if (ok) {
        auto check = testlang::StructureCheck(doc, crash->bytes);
        ok = !check && check.error().OnlyField(crash->ast.violated_fields[0]);
      }
      if (!ok && crash_bad++ == 0 && first.empty()) first = name + " crash seed " + std::to_string(seed);
    }
  }
  Outcome o;
  o.pass = coverage_bad == 0 && crash_bad == 0;
  o.detail = std::to_string(total) + " per mode, coverage failures " + std::to_string(coverage_bad) +
             ", crash failures " + std::to_string(crash_bad) + (first.empty() ? "" : ", first: " + first);
  return o;
}

// Size fields equal the measured length of what they size, on 1,000 blobs.
Outcome SizeRefSoundness() {
  int samples = 0, bad = 0;
  std::string first;
  auto names = test_support::GoldenDocNames();
  for (const auto& name : names) {
    auto doc = LoadDataDoc(name);
    for (std::uint64_t seed = 0; seed < 1000 / names.size(); ++seed) {
      ++samples;
      auto g = serializer::Generate(doc, Rng(10000 + seed), testlang::GenMode::kCoverage);
      if (!g) {
        if (bad++ == 0) first = name + ": generation failed";
        continue;
      }
      auto failures = test_support::SizeRefFailures(doc, g->ast, g->bytes);
      auto spans = test_support::SpanFailures(g->ast, g->bytes.size());
      if (!failures.empty() || !spans.empty()) {
        if (bad++ == 0) first = name + ": " + (failures.empty() ? spans.front() : failures.front());
      }
    }
  }
  return {bad == 0 && samples >= 1000,
          std::to_string(samples) + " samples, " + std::to_string(bad) + " unsound" +
              (first.empty() ? "" : ", first: " + first)};
}

// The partial merge reproduces the golden merged document.
Outcome PartialMerge() {
  auto base = LoadDataDoc("simple.json");
  auto partial = LoadDataDoc("partial.json");
  auto golden = LoadDataDoc("merged.json");
  auto merged = testlang::MergePartial(base, partial);
  if (!merged) return {false, "merge failed"};
  bool entry_from_base = *merged->Entry() == *base.Entry();
  bool rest_from_partial = true;
  for (const auto& r : partial.records) {
    if (r.name == testlang::kEntryRecord) continue;
    const auto* m = merged->FindRecord(r.name);
    rest_from_partial &= m != nullptr && *m == r;
  }
  bool equal = *merged == golden && testlang::ToText(*merged) == testlang::ToText(golden);
  return {equal && entry_from_base && rest_from_partial,
          std::string("golden ") + (equal ? "equal" : "differs") + ", entry from base " +
              (entry_from_base ? "yes" : "no") + ", records from partial " +
              (rest_from_partial ? "yes" : "no")};
}

// 100k draws: branch shares 25/25/50 within 1.5 points, weighted picks
// proportional to score + 1 within 3% relative, chi-square p > 0.01.
Outcome SchedulerMix() {
  constexpr int kDraws = 100000;
  const std::vector<std::uint64_t> scores = {1, 3};
  Rng rng(7);
  std::array<double, 3> branch{};
  std::array<double, 2> weighted{};
  for (int i = 0; i < kDraws; ++i) {
    auto pick = scheduler::SelectSeed(scores, rng);
    if (!pick) return {false, "selection failed"};
    ++branch[static_cast<int>(pick->branch)];
    if (pick->branch == scheduler::SeedBranch::kWeighted) ++weighted[pick->index];
  }
  const std::array<double, 3> share = {0.25, 0.25, 0.5};
  double max_abs = 0, chi_branch = 0;
  for (int b = 0; b < 3; ++b) {
    max_abs = std::max(max_abs, std::abs(branch[b] / kDraws - share[b]));
    double e = share[b] * kDraws;
    chi_branch += (branch[b] - e) * (branch[b] - e) / e;
  }
  double n_weighted = weighted[0] + weighted[1];
  const std::array<double, 2> wshare = {2.0 / 6.0, 4.0 / 6.0};
  double max_rel = 0, chi_weighted = 0;
  for (int i = 0; i < 2; ++i) {
    double e = wshare[i] * n_weighted;
    max_rel = std::max(max_rel, std::abs(weighted[i] - e) / e);
    chi_weighted += (weighted[i] - e) * (weighted[i] - e) / e;
  }
  namespace bm = boost::math;
  double p_branch = bm::cdf(bm::complement(bm::chi_squared(2), chi_branch));
  double p_weighted = bm::cdf(bm::complement(bm::chi_squared(1), chi_weighted));
  bool pass = max_abs <= 0.015 && max_rel <= 0.03 && p_branch > 0.01 && p_weighted > 0.01;
  return {pass, Fmt("branch max dev %.4f, weighted max rel dev %.4f, ", max_abs, max_rel) +
                    Fmt("p(branch) %.3f, p(weighted) %.3f", p_branch, p_weighted)};
}

driver::DriverConfig CampaignConfig(const std::string& mode, const fs::path& work) {
  driver::DriverConfig c;
  c.runner = {TESTFORGE_FIXTURE_RUNNER, mode};
  c.docs = {DataPath("toy.json"), DataPath("golden/03_tlv.json")};
  c.dictionary = DataPath("toy.dict");
  c.work_dir = work;
  return c;
}

// Same config and seed against the echo runner: identical event logs.
Outcome Determinism() {
  test_support::TempDir dir;
  auto config = CampaignConfig("echo", dir.path() / "a");
  config.iterations = 1000;
  config.seed = 42;
  std::ostringstream a, b;
  auto ra = driver::RunLoop(config, &a);
  config.work_dir = dir.path() / "b";
  auto rb = driver::RunLoop(config, &b);
  if (!ra || !rb) return {false, "campaign failed"};
  bool same = a.str() == b.str() && !a.str().empty();
  return {same, std::to_string(a.str().size()) + " bytes of events, " +
                    (same ? "identical" : "different")};
}

// 20 campaigns against the toy target: at least 19 find the crash within
// 10,000 iterations, each under 60 s.
Outcome CrashDiscovery() {
  constexpr int kCampaigns = 20;
  int found = 0;
  double slowest = 0;
  std::uint64_t worst_iter = 0;
  for (int k = 0; k < kCampaigns; ++k) {
    test_support::TempDir dir;
    auto config = CampaignConfig("toy", dir.path());
    config.docs = {DataPath("toy.json")};
    config.iterations = 10000;
    config.seed = 1000 + k;
    config.stop_on_crash = true;
    auto start = Clock::now();
    auto r = driver::RunLoop(config);
    double secs = Seconds(start);
    slowest = std::max(slowest, secs);
    if (r && r->first_crash_iteration && secs < 60.0) {
      ++found;
      worst_iter = std::max(worst_iter, *r->first_crash_iteration);
    }
  }
  return {found >= 19 && slowest < 60.0,
          std::to_string(found) + "/" + std::to_string(kCampaigns) + " found, latest at iteration " +
              std::to_string(worst_iter) + Fmt(", slowest %.2f s", slowest)};
}

// Persist/load is exact, and a corrupted sidecar only costs its own entry.
Outcome CorpusRoundTrip() {
  test_support::TempDir dir;
  corpus::Corpus c;
  std::uint32_t line = 1;
  for (const auto& name : test_support::GoldenDocNames()) {
    auto doc = LoadDataDoc(name);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto g = serializer::Generate(doc, Rng(seed), testlang::GenMode::kCoverage);
      if (!g) return {false, "generation failed for " + name};
      c.Add(g->bytes, corpus::Origin::kTestlang, g->ast, {{name, line++}}, false);
    }
  }
  for (int i = 0; i < 5; ++i) {
    c.Add(ToBytes("external " + std::to_string(i)), corpus::Origin::kExternal, std::nullopt,
          {{"ext.c", line++}}, i == 0);
  }
  if (!c.Persist(dir.path())) return {false, "persist failed"};
  auto loaded = corpus::Corpus::Load(dir.path());
  bool exact = loaded.corpus == c && loaded.corrupt.empty();

  const auto& victim = c.entries()[4];
  fs::path meta = dir.path() / "testlang" / (victim.id + ".meta");
  auto text = ReadFile(meta);
  if (!text || !WriteFile(meta, text->substr(0, text->size() / 2))) return {false, "corruption setup failed"};
  auto damaged = corpus::Corpus::Load(dir.path());
  bool rest = damaged.corrupt.size() == 1 && damaged.corpus.size() == c.size() - 1;
  for (const auto& e : c.entries()) {
    if (e.id == victim.id) continue;
    const auto* got = damaged.corpus.Find(e.id);
    rest &= got != nullptr && *got == e;
  }
  return {exact && rest, std::to_string(c.size()) + " entries, round trip " +
                             (exact ? "exact" : "differs") + ", after corruption " +
                             std::to_string(damaged.corpus.size()) + " loaded, " +
                             std::to_string(damaged.corrupt.size()) + " corrupt"};
}

}  // namespace
}  // namespace testforge::acceptance

int main() {
  using namespace testforge::acceptance;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"fdp round trip", FdpRoundTrip},
      {"example harness", ExampleHarness},
      {"produce after exhaustion", BadExample},
      {"generation validity", GenerationValidity},
      {"size-ref soundness", SizeRefSoundness},
      {"partial merge", PartialMerge},
      {"scheduler mix", SchedulerMix},
      {"determinism", Determinism},
      {"crash discovery", CrashDiscovery},
      {"corpus round trip", CorpusRoundTrip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "[" << (o.pass ? "PASS" : "FAIL") << "] " << (i + 1) << ". " << criteria[i].first
              << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
