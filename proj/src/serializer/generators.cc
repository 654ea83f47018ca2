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

#include "testforge/serializer/generators.h"

#include "testforge/common/subprocess.h"
#include "testforge/testlang/layout.h"

namespace testforge::serializer {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";
constexpr std::size_t kUuidLength = 36;

void AppendUtf8(Bytes& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<std::uint8_t>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<std::uint8_t>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<std::uint8_t>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<std::uint8_t>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<std::uint8_t>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<std::uint8_t>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<std::uint8_t>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<std::uint8_t>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<std::uint8_t>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<std::uint8_t>(0x80 | (cp & 0x3F)));
  }
}

std::uint32_t CodepointOfLength(int n, Rng& rng) {
  switch (n) {
    case 1: return static_cast<std::uint32_t>(rng.Uniform(0x20, 0x7E));
    case 2: return static_cast<std::uint32_t>(rng.Uniform(0xA0, 0x7FF));
    case 3: {
      // Skip the surrogate block.
      auto cp = static_cast<std::uint32_t>(rng.Uniform(0x800, 0xFFFF - 0x800));
      return cp >= 0xD800 ? cp + 0x800 : cp;
    }
    default: return static_cast<std::uint32_t>(rng.Uniform(0x10000, 0x10FFFF));
  }
}

Bytes Utf8Text(std::uint64_t length, Rng& rng) {
  Bytes out;
  while (out.size() < length) {
    auto room = static_cast<int>(std::min<std::uint64_t>(4, length - out.size()));
    AppendUtf8(out, CodepointOfLength(static_cast<int>(rng.Uniform(1, room)), rng));
  }
  return out;
}

Bytes UuidLike(std::uint64_t length, Rng& rng) {
  Bytes out;
  while (out.size() < length) {
    for (std::size_t i = 0; i < kUuidLength && out.size() < length; ++i) {
      if (i == 8 || i == 13 || i == 18 || i == 23) {
        out.push_back('-');
      } else if (i == 14) {
        out.push_back('4');
      } else {
        out.push_back(kHexDigits[rng.Index(16)]);
      }
    }
  }
  return out;
}

std::string Substitute(std::string arg, std::string_view key, const std::string& value) {
  for (auto pos = arg.find(key); pos != std::string::npos; pos = arg.find(key, pos + value.size())) {
    arg.replace(pos, key.size(), value);
  }
  return arg;
}

}  // namespace

std::uint64_t BuiltinNaturalLength(const testlang::BuiltinGenerator& gen, Rng& rng) {
  if (auto it = gen.args.find("length"); it != gen.args.end() && it->second >= 0) {
    return static_cast<std::uint64_t>(it->second);
  }
  if (gen.name == "uuid_like") return kUuidLength;
  return rng.Uniform(0, testlang::kDefaultMaxBytes);
}

Bytes RunBuiltin(const testlang::BuiltinGenerator& gen, std::uint64_t length, Rng& rng) {
  if (gen.name == "utf8_text") return Utf8Text(length, rng);
  if (gen.name == "uuid_like") return UuidLike(length, rng);
  Bytes out(length);
  for (std::uint8_t& b : out) {
    b = gen.name == "ascii_digits" ? static_cast<std::uint8_t>('0' + rng.Index(10))
                                   : static_cast<std::uint8_t>(rng.Uniform(0x20, 0x7E));
  }
  return out;
}

std::string_view ExternalErrorKindName(ExternalError::Kind kind) {
  switch (kind) {
    case ExternalError::Kind::kSpawnFailed: return "SpawnFailed";
    case ExternalError::Kind::kTimeout: return "Timeout";
    case ExternalError::Kind::kOutputTooLarge: return "OutputTooLarge";
    case ExternalError::Kind::kNonzeroExit: return "NonzeroExit";
  }
  return "Unknown";
}

Expected<Bytes, ExternalError> RunExternalGenerator(const testlang::ExternalGenerator& gen,
                                                    std::uint64_t seed, std::size_t max_bytes,
                                                    std::string_view field_path,
                                                    const ExternalBudget& budget) {
  std::string seed_text = std::to_string(seed);
  std::string max_text = std::to_string(max_bytes);
  std::string field(field_path);
  std::vector<std::string> argv;
  for (const std::string& arg : gen.command) {
    argv.push_back(Substitute(
        Substitute(Substitute(arg, "{seed}", seed_text), "{max_bytes}", max_text), "{field}",
        field));
  }
  EnvOverrides env = {{"TESTFORGE_SEED", seed_text},
                      {"TESTFORGE_MAX_BYTES", max_text},
                      {"TESTFORGE_FIELD", field}};
  CommandLimits limits{budget.timeout, std::min(max_bytes, budget.max_output)};
  auto run = RunCommand(argv, env, limits);
  if (!run) return MakeUnexpected(ExternalError{ExternalError::Kind::kSpawnFailed, 0, run.error()});
  using Outcome = CommandResult::Outcome;
  switch (run->outcome) {
    case Outcome::kTimeout:
      return MakeUnexpected(ExternalError{ExternalError::Kind::kTimeout, 0,
                                          "generator exceeded " +
                                              std::to_string(budget.timeout.count()) + " ms"});
    case Outcome::kOutputTooLarge:
      return MakeUnexpected(ExternalError{ExternalError::Kind::kOutputTooLarge, 0,
                                          "generator wrote more than " +
                                              std::to_string(limits.max_output) + " bytes"});
    case Outcome::kSignaled:
      return MakeUnexpected(ExternalError{ExternalError::Kind::kNonzeroExit, -run->status,
                                          "generator killed by signal " +
                                              std::to_string(run->status)});
    case Outcome::kExited:
      break;
  }
  if (run->status != 0) {
    return MakeUnexpected(ExternalError{ExternalError::Kind::kNonzeroExit, run->status,
                                        "generator exited with status " +
                                            std::to_string(run->status)});
  }
  return std::move(run->output);
}

}  // namespace testforge::serializer
