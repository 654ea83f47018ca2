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

#include "testforge/driver/driver.h"

#include <unistd.h>

#include <fstream>
#include <set>
#include <json.hpp>

#include "testforge/common/file.h"
#include "testforge/common/rng.h"
#include "testforge/common/sha256.h"
#include "testforge/corpus/corpus.h"
#include "testforge/driver/runner.h"
#include "testforge/fdp/encoder.h"
#include "testforge/mutator/dictionary.h"
#include "testforge/mutator/mutator.h"
#include "testforge/scheduler/scheduler.h"
#include "testforge/serializer/generate.h"
#include "testforge/testlang/parse.h"
#include "testforge/testlang/validate.h"

namespace testforge::driver {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using testlang::GenMode;
using testlang::TestlangAst;
using testlang::TestlangDoc;

namespace {

DriverError Err(DriverErrorCode code, std::string message) { return {code, std::move(message)}; }

fs::path Resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

Expected<TestlangDoc, std::string> LoadDoc(const fs::path& path) {
  auto text = ReadFile(path);
  if (!text) return MakeUnexpected("cannot read " + path.string());
  auto doc = testlang::ParseTestlang(*text);
  if (!doc) return MakeUnexpected(path.string() + ": " + testlang::FormatDiagnostic(doc.error()[0]));
  for (const auto& d : testlang::Validate(*doc)) {
    if (d.severity == testlang::Severity::kError) {
      return MakeUnexpected(path.string() + ": " + testlang::FormatDiagnostic(d));
    }
  }
  if (doc->is_partial) return MakeUnexpected(path.string() + ": partial documents need a merge first");
  return std::move(*doc);
}

// Scratch directory removed at scope exit unless the caller supplied one.
class WorkDir {
 public:
  explicit WorkDir(const std::optional<fs::path>& given) {
    if (given) {
      path_ = *given;
      fs::create_directories(path_);
      return;
    }
    std::string tmpl = (fs::temp_directory_path() / "testforge-XXXXXX").string();
    if (mkdtemp(tmpl.data()) != nullptr) {
      path_ = tmpl;
      owned_ = true;
    }
  }
  ~WorkDir() {
    std::error_code ec;
    if (owned_) fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  bool owned_ = false;
};

// What one iteration feeds the runner.
struct Candidate {
  Bytes bytes;
  std::optional<TestlangAst> ast;  // set for inputs that keep a valid AST
  std::string strategy;
  Json event;
};

class Campaign {
 public:
  Campaign(const DriverConfig& config, std::ostream* events)
      : config_(config), events_(events), master_(config.seed) {
    mutator_config_.fallback_probability = config.fallback_probability;
    weights_.recency_decay = config.recency_decay;
    weights_.deprioritized_factor = config.deprioritized_factor;
    gen_options_.external.timeout = std::chrono::milliseconds(config.generator_timeout_ms);
  }

  Expected<CampaignReport, DriverError> Run() {
    if (auto loaded = Load(); !loaded) return MakeUnexpected(loaded.error());
    if (config_.iterations == 0) return report_;
    WorkDir work(config_.work_dir);
    if (work.path().empty()) return MakeUnexpected(Err(DriverErrorCode::kStorageFailure, "no work dir"));
    Runner runner(config_.runner, work.path(), std::chrono::milliseconds(config_.exec_timeout_ms));
    if (auto s = runner.Start(); !s) {
      return MakeUnexpected(Err(DriverErrorCode::kRunnerStartFailed, s.error().message));
    }
    std::uint64_t consecutive_failures = 0;
    for (std::uint64_t iter = 0; iter < config_.iterations; ++iter) {
      Rng rng = master_.Fork(iter);
      Candidate input = Produce(rng);
      Json event{{"iter", iter}};
      event.update(input.event);
      input.event = std::move(event);
      auto result = runner.Invoke(input.bytes);
      ++report_.executions;
      ++report_.per_strategy[input.strategy].executions;
      if (!result) {
        if (result.error().code == RunnerErrorCode::kProtocolError) {
          return MakeUnexpected(Err(DriverErrorCode::kRunnerProtocolError, result.error().message));
        }
        ++report_.runner_failures;
        input.event["status"] = "runner_failure";
        Emit(input.event);
        if (++consecutive_failures >= config_.max_runner_failures) {
          return MakeUnexpected(Err(DriverErrorCode::kRunnerCrashLoop,
                                    "runner failed " + std::to_string(consecutive_failures) +
                                        " times in a row: " + result.error().message));
        }
        if (auto s = runner.Start(); !s) {
          return MakeUnexpected(Err(DriverErrorCode::kRunnerStartFailed, s.error().message));
        }
        continue;
      }
      consecutive_failures = 0;
      if (auto gated = Gate(iter, std::move(input), *result); !gated) {
        return MakeUnexpected(gated.error());
      }
      if (config_.stop_on_crash && report_.first_crash_iteration) break;
    }
    if (config_.corpus_dir) {
      if (auto p = corpus_.Persist(*config_.corpus_dir); !p) {
        return MakeUnexpected(Err(DriverErrorCode::kStorageFailure, p.error().path + ": " + p.error().message));
      }
    }
    for (const auto& c : candidates_) {
      if (c.triggered) report_.triggered_candidates.push_back(c.id);
    }
    return report_;
  }

 private:
  Expected<void, DriverError> Load() {
    if (config_.runner.empty()) return MakeUnexpected(Err(DriverErrorCode::kConfig, "no runner command"));
    if (config_.docs.empty()) return MakeUnexpected(Err(DriverErrorCode::kConfig, "no Testlang documents"));
    bool any_seq = false;
    for (const fs::path& p : config_.docs) {
      auto doc = LoadDoc(p);
      if (!doc) return MakeUnexpected(Err(DriverErrorCode::kConfig, doc.error()));
      any_seq = any_seq || doc->metadata.created_seq != 0;
      doc_index_[testlang::DocId(*doc)] = docs_.size();
      docs_.push_back(std::move(*doc));
    }
    // Without explicit sequence numbers, list order is creation order.
    if (!any_seq) {
      for (std::size_t i = 0; i < docs_.size(); ++i) docs_[i].metadata.created_seq = i;
    }
    if (config_.candidates) {
      auto text = ReadFile(*config_.candidates);
      if (!text) return MakeUnexpected(Err(DriverErrorCode::kConfig, "cannot read candidates"));
      auto parsed = scheduler::ParseCandidates(*text);
      if (!parsed) return MakeUnexpected(Err(DriverErrorCode::kConfig, "candidates: " + parsed.error()));
      candidates_ = std::move(*parsed);
    }
    if (config_.dictionary) {
      auto dict = mutator::Dictionary::Load(config_.dictionary->string());
      if (!dict) return MakeUnexpected(Err(DriverErrorCode::kConfig, "dictionary: " + dict.error()));
      dict_ = std::move(*dict);
    }
    if (config_.corpus_dir && fs::exists(*config_.corpus_dir)) {
      auto loaded = corpus::Corpus::Load(*config_.corpus_dir);
      corpus_ = std::move(loaded.corpus);
    }
    RescoreAll();
    return {};
  }

  void RescoreAll() {
    scores_.clear();
    for (const auto& e : corpus_.entries()) {
      scores_.push_back(scheduler::ScoreCoverage(e.coverage, candidates_));
    }
  }

  Candidate Produce(Rng& rng) {
    bool generate = corpus_.empty() || rng.Bernoulli(config_.p_gen);
    if (generate) {
      if (auto c = GenerateInput(rng)) return std::move(*c);
      if (corpus_.empty()) return Candidate{{}, std::nullopt, "generate.failed", {{"action", "generate"}}};
    }
    if (auto c = MutateInput(rng)) return std::move(*c);
    return Candidate{{}, std::nullopt, "mutate.failed", {{"action", "mutate"}}};
  }

  std::optional<Candidate> GenerateInput(Rng& rng) {
    auto pick = scheduler::SelectTestlang(docs_, rng, weights_);
    const TestlangDoc& doc = docs_[*pick];
    GenMode mode = rng.Bernoulli(config_.p_crash) ? GenMode::kCrash : GenMode::kCoverage;
    Rng gen_rng = rng.Fork("generate");
    Json event{{"action", "generate"}, {"doc", testlang::DocId(doc)}};
    for (GenMode m : {mode, GenMode::kCoverage}) {
      Candidate c;
      c.strategy = "generate." + std::string(testlang::GenModeName(m));
      if (doc.mode == testlang::DocMode::kFdp) {
        auto gen = serializer::GenerateFdpCalls(doc, gen_rng, m, gen_options_);
        if (!gen) continue;
        auto bytes = fdp::Encode(config_.dialect, gen->calls);
        if (!bytes) continue;
        c.bytes = std::move(*bytes);
        c.ast = std::move(gen->ast);
      } else {
        auto gen = serializer::Generate(doc, gen_rng, m, gen_options_);
        if (!gen) continue;
        c.bytes = std::move(gen->bytes);
        c.ast = std::move(gen->ast);
      }
      c.event = event;
      c.event["mode"] = testlang::GenModeName(m);
      return c;
    }
    return std::nullopt;
  }

  std::optional<Candidate> MutateInput(Rng& rng) {
    std::vector<std::uint64_t> scores = scores_;
    auto pick = scheduler::SelectSeed(scores, rng);
    if (!pick) return std::nullopt;
    const corpus::SeedEntry& seed = corpus_.entries()[pick->index];
    mutator::MutationInput in;
    in.bytes = seed.bytes;
    in.dict = &dict_;
    const TestlangDoc* doc = nullptr;
    if (auto it = doc_index_.find(seed.doc_id); seed.ast && it != doc_index_.end()) {
      doc = &docs_[it->second];
    }
    // fdp blobs are not laid out by record, so only raw operators apply.
    if (doc != nullptr && doc->mode == testlang::DocMode::kBytes) {
      in.doc = doc;
      in.ast = &*seed.ast;
    }
    Rng mut_rng = rng.Fork("mutate");
    auto m = mutator::Mutate(in, mut_rng, mutator_config_);
    if (!m) return std::nullopt;
    Candidate c;
    c.bytes = std::move(m->bytes);
    c.ast = std::move(m->ast);
    c.strategy = std::string(mutator::StrategyName(m->strategy));
    c.event = Json{{"action", "mutate"},
                   {"seed", seed.id.substr(0, 16)},
                   {"branch", scheduler::SeedBranchName(pick->branch)},
                   {"strategy", c.strategy}};
    return c;
  }

  Expected<void, DriverError> Gate(std::uint64_t iter, Candidate input, const RunResult& r) {
    bool crash = r.status == RunStatus::kCrash ||
                 (r.status == RunStatus::kTimeout && config_.timeout_is_crash);
    if (r.status == RunStatus::kTimeout) ++report_.timeouts;
    Json& event = input.event;
    event["input"] = Sha256Hex(input.bytes).substr(0, 16);
    event["status"] = RunStatusName(r.status);
    event["coverage"] = r.coverage.size();
    auto& counts = report_.per_strategy[input.strategy];
    if (crash) {
      ++report_.crashes;
      ++counts.crashes;
      if (!report_.first_crash_iteration) report_.first_crash_iteration = iter;
      auto flipped = scheduler::MarkTriggered(candidates_, r.coverage);
      if (!flipped.empty()) {
        event["triggered"] = flipped;
        RescoreAll();
      }
    }
    corpus::Origin origin = input.ast ? corpus::Origin::kTestlang : corpus::Origin::kExternal;
    Bytes bytes = input.bytes;
    auto added = corpus_.Add(std::move(bytes), origin, std::move(input.ast), r.coverage, crash);
    if (!added) {
      return MakeUnexpected(Err(DriverErrorCode::kStorageFailure, added.error().message));
    }
    event["gate"] = corpus::AddKindName(added->kind);
    if (added->kind == corpus::AddResult::Kind::kAdded) {
      ++report_.adds;
      ++counts.adds;
      scores_.push_back(scheduler::ScoreCoverage(r.coverage, candidates_));
    }
    Emit(event);
    return {};
  }

  void Emit(const Json& event) {
    if (events_ != nullptr) *events_ << event.dump() << '\n';
  }

  const DriverConfig& config_;
  std::ostream* events_;
  Rng master_;
  mutator::MutatorConfig mutator_config_;
  scheduler::TestlangWeights weights_;
  serializer::GenOptions gen_options_;
  std::vector<TestlangDoc> docs_;
  std::map<std::string, std::size_t> doc_index_;
  std::vector<scheduler::BugCandidate> candidates_;
  mutator::Dictionary dict_;
  corpus::Corpus corpus_;
  std::vector<std::uint64_t> scores_;
  CampaignReport report_;
};

}  // namespace

std::string_view DriverErrorCodeName(DriverErrorCode c) {
  switch (c) {
    case DriverErrorCode::kConfig: return "ConfigError";
    case DriverErrorCode::kRunnerStartFailed: return "RunnerStartFailed";
    case DriverErrorCode::kRunnerProtocolError: return "RunnerProtocolError";
    case DriverErrorCode::kRunnerCrashLoop: return "RunnerCrashLoop";
    case DriverErrorCode::kStorageFailure: return "StorageFailure";
  }
  return "Unknown";
}

Expected<DriverConfig, std::string> ParseDriverConfig(std::string_view text, const fs::path& base_dir) {
  try {
    Json j = Json::parse(text.begin(), text.end());
    if (!j.is_object()) return MakeUnexpected(std::string("config must be a JSON object"));
    static const std::set<std::string> kKnown = {
        "runner", "docs", "candidates", "dictionary", "corpus_dir", "work_dir", "event_log",
        "iterations", "seed", "p_gen", "p_crash", "fallback_probability", "recency_decay",
        "deprioritized_factor", "exec_timeout_ms", "generator_timeout_ms",
        "max_runner_failures", "timeout_is_crash", "stop_on_crash", "dialect"};
    for (const auto& [key, _] : j.items()) {
      if (kKnown.count(key) == 0) return MakeUnexpected("unknown config key '" + key + "'");
    }
    DriverConfig c;
    const Json& runner = j.at("runner");
    if (runner.is_string()) {
      c.runner = {runner.get<std::string>()};
    } else {
      c.runner = runner.get<std::vector<std::string>>();
    }
    // A runner given as a relative path with a slash is relative to the config.
    if (!c.runner.empty() && c.runner[0].find('/') != std::string::npos) {
      c.runner[0] = Resolve(base_dir, c.runner[0]).string();
    }
    for (const auto& d : j.at("docs")) c.docs.push_back(Resolve(base_dir, d.get<std::string>()));
    auto path_opt = [&](const char* key, std::optional<fs::path>& slot) {
      if (j.contains(key)) slot = Resolve(base_dir, j[key].get<std::string>());
    };
    path_opt("candidates", c.candidates);
    path_opt("dictionary", c.dictionary);
    path_opt("corpus_dir", c.corpus_dir);
    path_opt("work_dir", c.work_dir);
    path_opt("event_log", c.event_log);
    c.iterations = j.value("iterations", c.iterations);
    c.seed = j.value("seed", c.seed);
    c.p_gen = j.value("p_gen", c.p_gen);
    c.p_crash = j.value("p_crash", c.p_crash);
    c.fallback_probability = j.value("fallback_probability", c.fallback_probability);
    c.recency_decay = j.value("recency_decay", c.recency_decay);
    c.deprioritized_factor = j.value("deprioritized_factor", c.deprioritized_factor);
    c.exec_timeout_ms = j.value("exec_timeout_ms", c.exec_timeout_ms);
    c.generator_timeout_ms = j.value("generator_timeout_ms", c.generator_timeout_ms);
    c.max_runner_failures = j.value("max_runner_failures", c.max_runner_failures);
    c.timeout_is_crash = j.value("timeout_is_crash", c.timeout_is_crash);
    c.stop_on_crash = j.value("stop_on_crash", c.stop_on_crash);
    if (j.contains("dialect")) {
      auto d = fdp::ParseDialect(j["dialect"].get<std::string>());
      if (!d) return MakeUnexpected(std::string("unknown dialect"));
      c.dialect = *d;
    }
    for (double p : {c.p_gen, c.p_crash, c.fallback_probability}) {
      if (!(p >= 0 && p <= 1)) return MakeUnexpected(std::string("probabilities must lie in [0, 1]"));
    }
    if (c.exec_timeout_ms <= 0 || c.generator_timeout_ms <= 0) {
      return MakeUnexpected(std::string("timeouts must be positive"));
    }
    if (c.max_runner_failures == 0) return MakeUnexpected(std::string("max_runner_failures must be positive"));
    if (!(c.deprioritized_factor > 0)) {
      return MakeUnexpected(std::string("deprioritized_factor must be positive"));
    }
    return c;
  } catch (const std::exception& e) {
    return MakeUnexpected(std::string(e.what()));
  }
}

Expected<DriverConfig, std::string> LoadDriverConfig(const fs::path& path) {
  auto text = ReadFile(path);
  if (!text) return MakeUnexpected("cannot read " + path.string());
  return ParseDriverConfig(*text, path.parent_path());
}

std::string ReportToText(const CampaignReport& r) {
  Json j;
  j["executions"] = r.executions;
  j["adds"] = r.adds;
  j["crashes"] = r.crashes;
  j["timeouts"] = r.timeouts;
  j["runner_failures"] = r.runner_failures;
  j["first_crash_iteration"] = r.first_crash_iteration ? Json(*r.first_crash_iteration) : Json();
  j["triggered_candidates"] = r.triggered_candidates;
  Json per = Json::object();
  for (const auto& [name, c] : r.per_strategy) {
    per[name] = {{"executions", c.executions}, {"adds", c.adds}, {"crashes", c.crashes}};
  }
  j["per_strategy"] = per;
  return j.dump(2) + "\n";
}

Expected<CampaignReport, DriverError> RunLoop(const DriverConfig& config, std::ostream* events) {
  std::ofstream file;
  if (events == nullptr && config.event_log) {
    file.open(*config.event_log, std::ios::trunc);
    if (!file) {
      return MakeUnexpected(Err(DriverErrorCode::kStorageFailure, "cannot open " + config.event_log->string()));
    }
    events = &file;
  }
  Campaign campaign(config, events);
  return campaign.Run();
}

}  // namespace testforge::driver
