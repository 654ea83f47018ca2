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

// Command-line front end. Exit codes: 0 ok, 1 diagnostics or errors, 2 usage.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "testforge/common/file.h"
#include "testforge/common/rng.h"
#include "testforge/corpus/corpus.h"
#include "testforge/driver/driver.h"
#include "testforge/fdp/call_io.h"
#include "testforge/fdp/encoder.h"
#include "testforge/mutator/dictionary.h"
#include "testforge/mutator/mutator.h"
#include "testforge/serializer/generate.h"
#include "testforge/testlang/ast.h"
#include "testforge/testlang/merge.h"
#include "testforge/testlang/parse.h"
#include "testforge/testlang/validate.h"

namespace {

namespace fs = std::filesystem;
using namespace testforge;  // NOLINT

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

void PrintDiagnostics(const testlang::Diagnostics& diags) {
  for (const auto& d : diags) std::cerr << testlang::FormatDiagnostic(d) << "\n";
}

// Parses and validates; prints every diagnostic. Partial documents are
// accepted only when allow_partial is set.
std::optional<testlang::TestlangDoc> LoadDoc(const std::string& path, bool allow_partial = false) {
  auto text = ReadFile(path);
  if (!text) {
    std::cerr << path << ": cannot read\n";
    return std::nullopt;
  }
  auto doc = testlang::ParseTestlang(*text);
  if (!doc) {
    PrintDiagnostics(doc.error());
    return std::nullopt;
  }
  auto diags = testlang::Validate(*doc);
  PrintDiagnostics(diags);
  if (testlang::HasErrors(diags)) return std::nullopt;
  if (doc->is_partial && !allow_partial) {
    std::cerr << path << ": partial document; merge it into a base first\n";
    return std::nullopt;
  }
  return std::move(*doc);
}

bool WriteOut(const std::string& path, ByteSpan bytes) {
  if (WriteFile(path, ToString(bytes))) return true;
  std::cerr << path << ": cannot write\n";
  return false;
}

int CmdValidate(const std::string& file) {
  auto doc = LoadDoc(file, /*allow_partial=*/true);
  if (!doc) return kFailure;
  std::cout << "ok " << testlang::DocId(*doc) << "\n";
  return kOk;
}

int CmdMerge(const std::string& base_path, const std::string& partial_path, const std::string& out) {
  auto base = LoadDoc(base_path);
  auto partial = LoadDoc(partial_path, /*allow_partial=*/true);
  if (!base || !partial) return kFailure;
  auto merged = testlang::MergePartial(*base, *partial);
  if (!merged) {
    PrintDiagnostics(merged.error());
    return kFailure;
  }
  std::string text = testlang::ToText(*merged);
  if (out.empty()) {
    std::cout << text;
    return kOk;
  }
  return WriteOut(out, ToBytes(text)) ? kOk : kFailure;
}

struct GenerateArgs {
  std::string doc;
  std::string mode = "coverage";
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
  std::string out_dir;
  std::string dialect = "llvm";
  bool calls = false;
};

int CmdGenerate(const GenerateArgs& a) {
  auto doc = LoadDoc(a.doc);
  if (!doc) return kFailure;
  auto mode = a.mode == "crash" ? testlang::GenMode::kCrash : testlang::GenMode::kCoverage;
  auto dialect = fdp::ParseDialect(a.dialect);
  if (!a.out_dir.empty()) fs::create_directories(a.out_dir);
  Rng master(a.seed);
  for (std::uint64_t k = 0; k < a.count; ++k) {
    // A single output uses the seed directly; batches fork one stream each.
    Rng rng = a.count == 1 ? master : master.Fork(k);
    Bytes bytes;
    testlang::TestlangAst ast;
    std::string calls_text;
    if (doc->mode == testlang::DocMode::kFdp) {
      auto gen = serializer::GenerateFdpCalls(*doc, rng, mode);
      if (!gen) {
        std::cerr << serializer::GenErrorCodeName(gen.error().code) << " " << gen.error().field
                  << ": " << gen.error().message << "\n";
        return kFailure;
      }
      auto encoded = fdp::Encode(*dialect, gen->calls);
      if (!encoded) {
        std::cerr << fdp::FdpErrorCodeName(encoded.error().code) << " at call "
                  << encoded.error().call_index << ": " << encoded.error().message << "\n";
        return kFailure;
      }
      bytes = std::move(*encoded);
      ast = std::move(gen->ast);
      calls_text = fdp::CallListToText(gen->calls);
    } else {
      auto gen = serializer::Generate(*doc, rng, mode);
      if (!gen) {
        std::cerr << serializer::GenErrorCodeName(gen.error().code) << " " << gen.error().field
                  << ": " << gen.error().message << "\n";
        return kFailure;
      }
      bytes = std::move(gen->bytes);
      ast = std::move(gen->ast);
    }
    if (a.out_dir.empty()) {
      std::cout << (a.calls && !calls_text.empty() ? calls_text : HexEncode(bytes) + "\n");
      continue;
    }
    std::string stem = (fs::path(a.out_dir) / std::to_string(k)).string();
    if (!WriteOut(stem + ".bin", bytes) || !WriteOut(stem + ".ast", ToBytes(testlang::AstToText(ast)))) {
      return kFailure;
    }
    if (!calls_text.empty() && !WriteOut(stem + ".calls.json", ToBytes(calls_text))) return kFailure;
  }
  return kOk;
}

struct MutateArgs {
  std::string doc;
  std::string in;
  std::string ast;
  std::string dict;
  std::uint64_t seed = 0;
  std::string out;
};

int CmdMutate(const MutateArgs& a) {
  auto doc = LoadDoc(a.doc);
  if (!doc) return kFailure;
  auto raw = ReadFile(a.in);
  if (!raw) {
    std::cerr << a.in << ": cannot read\n";
    return kFailure;
  }
  Bytes bytes = ToBytes(*raw);
  std::optional<testlang::TestlangAst> ast;
  if (!a.ast.empty()) {
    auto text = ReadFile(a.ast);
    auto parsed = text ? testlang::AstFromText(*text) : MakeUnexpected(std::string("cannot read"));
    if (!parsed) {
      std::cerr << a.ast << ": " << parsed.error() << "\n";
      return kFailure;
    }
    ast = std::move(*parsed);
  }
  mutator::Dictionary dict;
  if (!a.dict.empty()) {
    auto loaded = mutator::Dictionary::Load(a.dict);
    if (!loaded) {
      std::cerr << a.dict << ": " << loaded.error() << "\n";
      return kFailure;
    }
    dict = std::move(*loaded);
  }
  mutator::MutationInput in;
  in.bytes = bytes;
  in.doc = doc->mode == testlang::DocMode::kBytes ? &*doc : nullptr;
  in.ast = ast && in.doc != nullptr ? &*ast : nullptr;
  in.dict = &dict;
  Rng rng(a.seed);
  auto m = mutator::Mutate(in, rng);
  if (!m) {
    std::cerr << "mutation failed: " << m.error().message << "\n";
    return kFailure;
  }
  std::cerr << "strategy " << mutator::StrategyName(m->strategy) << "\n";
  if (a.out.empty()) {
    std::cout << HexEncode(m->bytes) << "\n";
    return kOk;
  }
  if (!WriteOut(a.out, m->bytes)) return kFailure;
  if (m->ast && !WriteOut(a.out + ".ast", ToBytes(testlang::AstToText(*m->ast)))) return kFailure;
  return kOk;
}

int CmdEncode(const std::string& dialect_name, const std::string& calls_path, const std::string& out) {
  auto text = ReadFile(calls_path);
  if (!text) {
    std::cerr << calls_path << ": cannot read\n";
    return kFailure;
  }
  auto calls = fdp::ParseCallList(*text);
  if (!calls) {
    std::cerr << calls_path << ": " << calls.error() << "\n";
    return kFailure;
  }
  auto bytes = fdp::Encode(*fdp::ParseDialect(dialect_name), *calls);
  if (!bytes) {
    std::cerr << fdp::FdpErrorCodeName(bytes.error().code) << " at call " << bytes.error().call_index
              << ": " << bytes.error().message << "\n";
    return kFailure;
  }
  if (out.empty()) {
    std::cout << HexEncode(*bytes) << "\n";
    return kOk;
  }
  return WriteOut(out, *bytes) ? kOk : kFailure;
}

int CmdRun(const std::string& config_path, const std::string& report_path) {
  auto config = driver::LoadDriverConfig(config_path);
  if (!config) {
    std::cerr << config_path << ": " << config.error() << "\n";
    return kFailure;
  }
  auto report = driver::RunLoop(*config);
  if (!report) {
    std::cerr << driver::DriverErrorCodeName(report.error().code) << ": " << report.error().message << "\n";
    return kFailure;
  }
  std::string text = driver::ReportToText(*report);
  std::cout << text;
  if (!report_path.empty() && !WriteOut(report_path, ToBytes(text))) return kFailure;
  return kOk;
}

int CmdCorpusStats(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    std::cerr << dir << ": not a directory\n";
    return kFailure;
  }
  auto loaded = corpus::Corpus::Load(dir);
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& c : loaded.corrupt) std::cerr << "CorruptEntry " << c.path << ": " << c.reason << "\n";
  auto s = loaded.corpus.Stats();
  std::cout << "testlang " << s.testlang_entries << "\n"
            << "external " << s.external_entries << "\n"
            << "union_coverage " << s.union_coverage << "\n"
            << "crashes " << s.crashes << "\n"
            << "corrupt " << loaded.corrupt.size() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-aware fuzzing input toolkit"};
  app.require_subcommand(1);
  int rc = kOk;

  std::string file;
  auto* validate = app.add_subcommand("validate", "Parse and validate a Testlang document");
  validate->add_option("file", file)->required();

  std::string base, partial, merge_out;
  auto* merge = app.add_subcommand("merge", "Merge a partial document into a base");
  merge->add_option("base", base)->required();
  merge->add_option("partial", partial)->required();
  merge->add_option("-o,--out", merge_out, "Write the merged document here");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate inputs from a document");
  generate->add_option("--doc", gen.doc)->required();
  generate->add_option("--mode", gen.mode)->check(CLI::IsMember({"coverage", "crash"}));
  generate->add_option("--seed", gen.seed)->required();
  generate->add_option("--count", gen.count)->check(CLI::PositiveNumber);
  generate->add_option("--out-dir", gen.out_dir, "Write <k>.bin and <k>.ast files");
  generate->add_option("--dialect", gen.dialect, "Encoder for fdp-mode documents")
      ->check(CLI::IsMember({"llvm", "jazzer"}));
  generate->add_flag("--calls", gen.calls, "Print fdp call lists instead of blobs");

  MutateArgs mut;
  auto* mutate = app.add_subcommand("mutate", "Apply one mutation to an input");
  mutate->add_option("--doc", mut.doc)->required();
  mutate->add_option("--in", mut.in)->required();
  mutate->add_option("--ast", mut.ast, "AST sidecar of the input");
  mutate->add_option("--dict", mut.dict);
  mutate->add_option("--seed", mut.seed)->required();
  mutate->add_option("--out", mut.out);

  std::string dialect, calls, encode_out;
  auto* encode = app.add_subcommand("encode", "Encode an FDP call list into a blob");
  encode->add_option("--dialect", dialect)->required()->check(CLI::IsMember({"llvm", "jazzer"}));
  encode->add_option("--calls", calls)->required();
  encode->add_option("--out", encode_out);

  std::string config, report;
  auto* run = app.add_subcommand("run", "Run a fuzzing campaign");
  run->add_option("--config", config)->required();
  run->add_option("--report", report, "Also write the report here");

  std::string corpus_dir;
  auto* corpus_cmd = app.add_subcommand("corpus", "Corpus tools");
  corpus_cmd->require_subcommand(1);
  auto* stats = corpus_cmd->add_subcommand("stats", "Print corpus counts");
  stats->add_option("dir", corpus_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*validate) rc = CmdValidate(file);
  if (*merge) rc = CmdMerge(base, partial, merge_out);
  if (*generate) rc = CmdGenerate(gen);
  if (*mutate) rc = CmdMutate(mut);
  if (*encode) rc = CmdEncode(dialect, calls, encode_out);
  if (*run) rc = CmdRun(config, report);
  if (*stats) rc = CmdCorpusStats(corpus_dir);
  return rc;
}
