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

#include "testforge/fdp/call_io.h"

#include <json.hpp>

namespace testforge::fdp {

namespace {

using Json = nlohmann::ordered_json;

struct CallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Int128 ReadInt(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) {
    if (auto parsed = ParseInt128(v.get<std::string>())) return *parsed;
  }
  throw CallError(std::string("\"") + key + "\" is not an integer");
}

Json WriteInt(Int128 v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<std::int64_t>(v);
  if (v >= 0 && v <= UINT64_MAX) return static_cast<std::uint64_t>(v);
  return Int128ToString(v);
}

Bytes ReadBytes(const Json& j) {
  const Json& v = j.at("value");
  if (v.is_string()) return ToBytes(v.get<std::string>());
  if (v.is_object() && v.contains("hex")) {
    if (auto b = HexDecode(v["hex"].get<std::string>())) return *b;
    throw CallError("bad hex value");
  }
  if (v.is_array()) {
    Bytes out;
    for (const Json& e : v) {
      int b = e.get<int>();
      if (b < 0 || b > 255) throw CallError("byte out of range");
      out.push_back(static_cast<std::uint8_t>(b));
    }
    return out;
  }
  throw CallError("\"value\" must be a string, {\"hex\": ...} or a byte array");
}

Json WriteBytes(ByteSpan b) { return Json{{"hex", HexEncode(b)}}; }

int ReadWidth(const Json& j) {
  int w = j.value("width", 32);
  if (w != 8 && w != 16 && w != 32 && w != 64) throw CallError("width must be 8, 16, 32 or 64");
  return w;
}

FdpCall ReadCall(const Json& j) {
  FdpCall call;
  call.checked = j.value("checked", true);
  std::string op = j.at("op").get<std::string>();
  if (op == "bytes") {
    call.op = ProduceBytes{ReadBytes(j)};
  } else if (op == "remaining_bytes") {
    call.op = ProduceRemainingBytes{ReadBytes(j)};
  } else if (op == "string") {
    ProduceString s{ReadBytes(j)};
    std::string policy = j.value("policy", "random_length");
    if (policy == "random_length") {
      s.policy = StringPolicy::kRandomLength;
      s.max_length = j.at("max_length").get<std::size_t>();
    } else if (policy == "bytes_as_string") {
      s.policy = StringPolicy::kBytesAsString;
    } else if (policy == "remaining") {
      s.policy = StringPolicy::kRemaining;
    } else {
      throw CallError("unknown string policy \"" + policy + "\"");
    }
    call.op = std::move(s);
  } else if (op == "bool") {
    call.op = ProduceBool{j.at("value").get<bool>()};
  } else if (op == "int") {
    call.op = ProduceInt{ReadWidth(j), j.value("signed", false), ReadInt(j, "value")};
  } else if (op == "int_in_range") {
    call.op = ProduceIntInRange{ReadWidth(j), j.value("signed", false), ReadInt(j, "min"),
                                ReadInt(j, "max"), ReadInt(j, "value")};
  } else if (op == "float_in_range") {
    call.op = ProduceFloatInRange{j.at("min").get<double>(), j.at("max").get<double>(),
                                  j.at("value").get<double>()};
  } else if (op == "probability") {
    call.op = ProduceProbability{j.at("value").get<double>()};
  } else {
    throw CallError("unknown op \"" + op + "\"");
  }
  return call;
}

Json WriteCall(const FdpCall& call) {
  Json j;
  j["op"] = OpName(call.op);
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, ProduceBytes> || std::is_same_v<T, ProduceRemainingBytes>) {
          j["value"] = WriteBytes(op.value);
        } else if constexpr (std::is_same_v<T, ProduceString>) {
          j["policy"] = StringPolicyName(op.policy);
          if (op.policy == StringPolicy::kRandomLength) j["max_length"] = op.max_length;
          j["value"] = WriteBytes(op.value);
        } else if constexpr (std::is_same_v<T, ProduceBool>) {
          j["value"] = op.value;
        } else if constexpr (std::is_same_v<T, ProduceInt>) {
          j["width"] = op.width;
          j["signed"] = op.is_signed;
          j["value"] = WriteInt(op.value);
        } else if constexpr (std::is_same_v<T, ProduceIntInRange>) {
          j["width"] = op.width;
          j["signed"] = op.is_signed;
          j["min"] = WriteInt(op.min);
          j["max"] = WriteInt(op.max);
          j["value"] = WriteInt(op.value);
        } else if constexpr (std::is_same_v<T, ProduceFloatInRange>) {
          j["min"] = op.min;
          j["max"] = op.max;
          j["value"] = op.value;
        } else {
          j["value"] = op.value;
        }
      },
      call.op);
  if (!call.checked) j["checked"] = false;
  return j;
}

}  // namespace

Expected<std::vector<FdpCall>, std::string> ParseCallList(std::string_view text) {
  Json doc = Json::parse(text.begin(), text.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return MakeUnexpected(std::string("call list is not valid JSON"));
  const Json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("calls")) return MakeUnexpected(std::string("missing \"calls\""));
    list = &doc["calls"];
  }
  if (!list->is_array()) return MakeUnexpected(std::string("calls must be an array"));
  std::vector<FdpCall> calls;
  for (std::size_t i = 0; i < list->size(); ++i) {
    try {
      calls.push_back(ReadCall((*list)[i]));
    } catch (const std::exception& e) {
      return MakeUnexpected("call " + std::to_string(i) + ": " + e.what());
    }
  }
  return calls;
}

std::string CallListToText(const std::vector<FdpCall>& calls) {
  Json list = Json::array();
  for (const FdpCall& c : calls) list.push_back(WriteCall(c));
  return Json{{"calls", list}}.dump(2) + "\n";
}

}  // namespace testforge::fdp
