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

#include "testforge/testlang/parse.h"

#include <json.hpp>
#include <set>
#include <string>

#include "testforge/common/sha256.h"

namespace testforge::testlang {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

class Parser {
 public:
  Diagnostics diags;

  void Error(DiagCode code, std::string path, std::string message) {
    diags.push_back({Severity::kError, code, std::move(path), std::move(message)});
  }

  void RejectUnknownKeys(const Json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!allowed.contains(it.key())) {
        Error(DiagCode::kInvalidValue, path + "." + it.key(), "unknown key");
      }
    }
  }

  std::optional<Int128> ParseInt(const Json& j, const std::string& path) {
    if (j.is_number_unsigned()) return static_cast<Int128>(j.get<std::uint64_t>());
    if (j.is_number_integer()) return static_cast<Int128>(j.get<std::int64_t>());
    if (j.is_string()) {
      if (auto v = ParseInt128(j.get<std::string>())) return v;
    }
    Error(DiagCode::kInvalidValue, path, "expected an integer");
    return std::nullopt;
  }

  std::optional<std::uint64_t> ParseCount(const Json& j, const std::string& path) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    Error(DiagCode::kInvalidValue, path, "expected a non-negative integer");
    return std::nullopt;
  }

  // Byte strings: a JSON string (its UTF-8 bytes), {"hex": "..."}, or an
  // array of byte values.
  std::optional<Bytes> ParseBytes(const Json& j, const std::string& path) {
    if (j.is_string()) return ToBytes(j.get<std::string>());
    if (j.is_object() && j.size() == 1 && j.contains("hex") &&
        j["hex"].is_string()) {
      if (auto b = HexDecode(j["hex"].get<std::string>())) return b;
    }
    if (j.is_array()) {
      Bytes out;
      for (const Json& e : j) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 0 ||
            e.get<std::int64_t>() > 255) {
          Error(DiagCode::kInvalidValue, path, "byte values must be 0..255");
          return std::nullopt;
        }
        out.push_back(static_cast<std::uint8_t>(e.get<std::int64_t>()));
      }
      return out;
    }
    Error(DiagCode::kInvalidValue, path, "expected a byte string");
    return std::nullopt;
  }

  std::optional<SizeSpec> ParseSize(const Json& j, const std::string& path,
                                    SizeUnit default_unit) {
    if (j.is_number()) {
      auto n = ParseCount(j, path);
      if (!n) return std::nullopt;
      return SizeFixed{*n};
    }
    if (!j.is_object()) {
      Error(DiagCode::kInvalidValue, path, "expected a number or an object");
      return std::nullopt;
    }
    if (j.contains("ref")) {
      RejectUnknownKeys(j, {"ref", "unit"}, path);
      if (!j["ref"].is_string()) {
        Error(DiagCode::kInvalidValue, path + ".ref", "expected a field name");
        return std::nullopt;
      }
      SizeRef ref{j["ref"].get<std::string>(), default_unit};
      if (j.contains("unit")) {
        std::string unit = j["unit"].is_string() ? j["unit"].get<std::string>() : "";
        if (unit == "bytes") {
          ref.unit = SizeUnit::kBytes;
        } else if (unit == "elements") {
          ref.unit = SizeUnit::kElements;
        } else {
          Error(DiagCode::kInvalidValue, path + ".unit",
                "expected \"bytes\" or \"elements\"");
          return std::nullopt;
        }
      }
      return ref;
    }
    if (j.contains("min") || j.contains("max")) {
      RejectUnknownKeys(j, {"min", "max"}, path);
      if (!j.contains("min") || !j.contains("max")) {
        Error(DiagCode::kMissingRequired, path, "range needs both min and max");
        return std::nullopt;
      }
      auto lo = ParseCount(j["min"], path + ".min");
      auto hi = ParseCount(j["max"], path + ".max");
      if (!lo || !hi) return std::nullopt;
      return SizeRange{*lo, *hi};
    }
    Error(DiagCode::kInvalidValue, path, "expected ref or min/max");
    return std::nullopt;
  }

  std::optional<Field> ParseField(const Json& j, const std::string& path,
                                  bool name_required) {
    if (!j.is_object()) {
      Error(DiagCode::kInvalidValue, path, "field must be an object");
      return std::nullopt;
    }
    Field f;
    if (j.contains("name") && j["name"].is_string()) {
      f.name = j["name"].get<std::string>();
    } else if (name_required) {
      Error(DiagCode::kMissingRequired, path + ".name", "field needs a name");
      return std::nullopt;
    } else {
      f.name = "item";
    }
    std::string fpath = path;
    if (!j.contains("type")) {
      Error(DiagCode::kMissingRequired, fpath + ".type", "field needs a type");
      return std::nullopt;
    }
    std::string type = j["type"].is_string() ? j["type"].get<std::string>() : "";
    std::set<std::string> allowed = {"name", "type", "encoder", "hint"};
    bool ok = true;
    if (type == "int" || type == "bool") {
      f.kind = FieldKind::kInt;
      allowed.insert({"width", "signed", "endian", "size", "range", "enum", "const"});
      if (type == "bool") {
        f.as_bool = true;
        f.width = 8;
        f.constraint = IntRange{0, 1};
        allowed = {"name", "type", "hint"};
      }
    } else if (type == "bytes") {
      f.kind = FieldKind::kBytes;
      allowed.insert({"size", "enum", "const", "terminator"});
    } else if (type == "string") {
      f.kind = FieldKind::kString;
      allowed.insert({"size", "enum", "const", "terminator"});
    } else if (type == "array") {
      f.kind = FieldKind::kArray;
      allowed.insert({"element", "count"});
    } else if (type == "record") {
      f.kind = FieldKind::kRecordRef;
      allowed.insert("record");
    } else if (type == "custom") {
      f.kind = FieldKind::kCustom;
      allowed.insert({"generator", "size"});
    } else {
      Error(DiagCode::kUnknownFieldKind, fpath + ".type",
            "unknown field type \"" + type + "\"");
      return std::nullopt;
    }
    RejectUnknownKeys(j, allowed, fpath);

    if (f.kind == FieldKind::kInt && !f.as_bool) {
      if (j.contains("width")) {
        auto w = ParseCount(j["width"], fpath + ".width");
        if (!w || (*w != 8 && *w != 16 && *w != 32 && *w != 64)) {
          if (w) Error(DiagCode::kInvalidValue, fpath + ".width", "width must be 8, 16, 32 or 64");
          ok = false;
        } else {
          f.width = static_cast<int>(*w);
        }
      }
      if (j.contains("signed")) {
        if (!j["signed"].is_boolean()) {
          Error(DiagCode::kInvalidValue, fpath + ".signed", "expected a boolean");
          ok = false;
        } else {
          f.is_signed = j["signed"].get<bool>();
        }
      }
      if (j.contains("endian")) {
        std::string e = j["endian"].is_string() ? j["endian"].get<std::string>() : "";
        if (e == "big") {
          f.endian = Endianness::kBig;
        } else if (e == "little") {
          f.endian = Endianness::kLittle;
        } else {
          Error(DiagCode::kInvalidValue, fpath + ".endian", "expected big or little");
          ok = false;
        }
      }
    }

    const char* size_key = f.kind == FieldKind::kArray ? "count" : "size";
    if (j.contains(size_key)) {
      auto unit = f.kind == FieldKind::kArray ? SizeUnit::kElements : SizeUnit::kBytes;
      if (auto s = ParseSize(j[size_key], fpath + "." + size_key, unit)) {
        f.size = *s;
      } else {
        ok = false;
      }
    }

    int constraint_keys = 0;
    for (const char* k : {"range", "enum", "const", "terminator"}) {
      if (j.contains(k)) ++constraint_keys;
    }
    if (constraint_keys > 1) {
      Error(DiagCode::kInvalidConstraint, fpath, "at most one of range/enum/const/terminator");
      ok = false;
    } else if (f.kind == FieldKind::kInt && !f.as_bool) {
      if (j.contains("range")) {
        const Json& r = j["range"];
        std::optional<Int128> lo, hi;
        if (r.is_array() && r.size() == 2) {
          lo = ParseInt(r[0], fpath + ".range[0]");
          hi = ParseInt(r[1], fpath + ".range[1]");
        } else if (r.is_object() && r.contains("min") && r.contains("max")) {
          lo = ParseInt(r["min"], fpath + ".range.min");
          hi = ParseInt(r["max"], fpath + ".range.max");
        } else {
          Error(DiagCode::kInvalidValue, fpath + ".range", "expected [lo, hi] or {min, max}");
        }
        if (lo && hi) {
          f.constraint = IntRange{*lo, *hi};
        } else {
          ok = false;
        }
      } else if (j.contains("enum")) {
        IntEnum e;
        if (!j["enum"].is_array()) {
          Error(DiagCode::kInvalidValue, fpath + ".enum", "expected an array");
          ok = false;
        } else {
          for (std::size_t i = 0; i < j["enum"].size(); ++i) {
            auto v = ParseInt(j["enum"][i], fpath + ".enum[" + std::to_string(i) + "]");
            if (!v) {
              ok = false;
              break;
            }
            e.values.push_back(*v);
          }
          f.constraint = std::move(e);
        }
      } else if (j.contains("const")) {
        if (auto v = ParseInt(j["const"], fpath + ".const")) {
          f.constraint = IntConst{*v};
        } else {
          ok = false;
        }
      }
    } else if (f.kind == FieldKind::kBytes || f.kind == FieldKind::kString) {
      if (j.contains("enum")) {
        BytesEnum e;
        if (!j["enum"].is_array()) {
          Error(DiagCode::kInvalidValue, fpath + ".enum", "expected an array");
          ok = false;
        } else {
          for (std::size_t i = 0; i < j["enum"].size(); ++i) {
            auto v = ParseBytes(j["enum"][i], fpath + ".enum[" + std::to_string(i) + "]");
            if (!v) {
              ok = false;
              break;
            }
            e.values.push_back(*v);
          }
          f.constraint = std::move(e);
        }
      } else if (j.contains("const")) {
        if (auto v = ParseBytes(j["const"], fpath + ".const")) {
          f.constraint = BytesConst{*v};
        } else {
          ok = false;
        }
      } else if (j.contains("terminator")) {
        if (auto v = ParseBytes(j["terminator"], fpath + ".terminator")) {
          f.constraint = Terminator{*v};
        } else {
          ok = false;
        }
      }
    }

    if (f.kind == FieldKind::kRecordRef) {
      if (!j.contains("record") || !j["record"].is_string()) {
        Error(DiagCode::kMissingRequired, fpath + ".record", "record field needs a record name");
        ok = false;
      } else {
        f.record = j["record"].get<std::string>();
      }
    }
    if (f.kind == FieldKind::kArray) {
      if (!j.contains("element")) {
        Error(DiagCode::kMissingRequired, fpath + ".element", "array needs an element");
        ok = false;
      } else if (auto e = ParseField(j["element"], fpath + ".element", false)) {
        f.element = std::make_unique<Field>(std::move(*e));
      } else {
        ok = false;
      }
      if (!j.contains("count")) {
        Error(DiagCode::kMissingRequired, fpath + ".count", "array needs a count");
        ok = false;
      }
    }
    if (f.kind == FieldKind::kCustom) {
      if (!j.contains("generator")) {
        Error(DiagCode::kMissingRequired, fpath + ".generator", "custom field needs a generator");
        ok = false;
      } else if (auto g = ParseGenerator(j["generator"], fpath + ".generator")) {
        f.generator = std::move(*g);
      } else {
        ok = false;
      }
    }
    for (const char* k : {"encoder", "hint"}) {
      if (!j.contains(k)) continue;
      if (!j[k].is_string()) {
        Error(DiagCode::kInvalidValue, fpath + "." + k, "expected a string");
        ok = false;
        continue;
      }
      (std::string(k) == "encoder" ? f.encoder : f.hint) = j[k].get<std::string>();
    }
    if (!ok) return std::nullopt;
    return f;
  }

  std::optional<GeneratorRef> ParseGenerator(const Json& j, const std::string& path) {
    if (!j.is_object()) {
      Error(DiagCode::kInvalidValue, path, "expected an object");
      return std::nullopt;
    }
    if (j.contains("builtin")) {
      RejectUnknownKeys(j, {"builtin", "args"}, path);
      BuiltinGenerator b;
      if (!j["builtin"].is_string()) {
        Error(DiagCode::kInvalidValue, path + ".builtin", "expected a name");
        return std::nullopt;
      }
      b.name = j["builtin"].get<std::string>();
      if (j.contains("args")) {
        if (!j["args"].is_object()) {
          Error(DiagCode::kInvalidValue, path + ".args", "expected an object");
          return std::nullopt;
        }
        for (auto it = j["args"].begin(); it != j["args"].end(); ++it) {
          if (!it->is_number_integer()) {
            Error(DiagCode::kInvalidValue, path + ".args." + it.key(), "expected an integer");
            return std::nullopt;
          }
          b.args[it.key()] = it->get<std::int64_t>();
        }
      }
      return b;
    }
    if (j.contains("command")) {
      RejectUnknownKeys(j, {"command"}, path);
      ExternalGenerator e;
      if (!j["command"].is_array()) {
        Error(DiagCode::kInvalidValue, path + ".command", "expected an argv array");
        return std::nullopt;
      }
      for (const Json& a : j["command"]) {
        if (!a.is_string()) {
          Error(DiagCode::kInvalidValue, path + ".command", "argv entries must be strings");
          return std::nullopt;
        }
        e.command.push_back(a.get<std::string>());
      }
      return e;
    }
    Error(DiagCode::kMissingRequired, path, "generator needs builtin or command");
    return std::nullopt;
  }

  std::optional<TestlangDoc> ParseDoc(const Json& j) {
    if (!j.is_object()) {
      Error(DiagCode::kInvalidValue, "", "document must be an object");
      return std::nullopt;
    }
    RejectUnknownKeys(j, {"schema_version", "mode", "default_endian", "is_partial",
                          "records", "metadata"},
                      "");
    TestlangDoc doc;
    if (j.contains("schema_version")) {
      auto v = ParseCount(j["schema_version"], "schema_version");
      if (v && *v > static_cast<std::uint64_t>(kSchemaVersion)) {
        Error(DiagCode::kUnsupportedSchemaVersion, "schema_version",
              "this build understands version " + std::to_string(kSchemaVersion));
      } else if (v && *v == 0) {
        Error(DiagCode::kInvalidValue, "schema_version", "version starts at 1");
      } else if (v) {
        doc.schema_version = static_cast<int>(*v);
      }
    }
    if (j.contains("mode")) {
      std::string m = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
      if (m == "bytes") {
        doc.mode = DocMode::kBytes;
      } else if (m == "fdp") {
        doc.mode = DocMode::kFdp;
      } else {
        Error(DiagCode::kInvalidValue, "mode", "expected bytes or fdp");
      }
    }
    if (j.contains("default_endian")) {
      std::string e = j["default_endian"].is_string() ? j["default_endian"].get<std::string>() : "";
      if (e == "big") {
        doc.default_endianness = Endianness::kBig;
      } else if (e == "little") {
        doc.default_endianness = Endianness::kLittle;
      } else {
        Error(DiagCode::kInvalidValue, "default_endian", "expected big or little");
      }
    }
    if (j.contains("is_partial")) {
      if (j["is_partial"].is_boolean()) {
        doc.is_partial = j["is_partial"].get<bool>();
      } else {
        Error(DiagCode::kInvalidValue, "is_partial", "expected a boolean");
      }
    }
    if (!j.contains("records")) {
      Error(DiagCode::kMissingRequired, "records", "document needs a records array");
    } else if (!j["records"].is_array()) {
      Error(DiagCode::kInvalidValue, "records", "expected an array");
    } else {
      for (std::size_t i = 0; i < j["records"].size(); ++i) {
        const Json& r = j["records"][i];
        std::string rpath = "records[" + std::to_string(i) + "]";
        if (!r.is_object() || !r.contains("name") || !r["name"].is_string()) {
          Error(DiagCode::kMissingRequired, rpath + ".name", "record needs a name");
          continue;
        }
        RejectUnknownKeys(r, {"name", "fields"}, rpath);
        Record rec;
        rec.name = r["name"].get<std::string>();
        rpath = "records." + rec.name;
        if (!r.contains("fields") || !r["fields"].is_array()) {
          Error(DiagCode::kMissingRequired, rpath + ".fields", "record needs a fields array");
          continue;
        }
        for (std::size_t k = 0; k < r["fields"].size(); ++k) {
          const Json& fj = r["fields"][k];
          std::string fname = fj.is_object() && fj.contains("name") && fj["name"].is_string()
                                  ? fj["name"].get<std::string>()
                                  : std::to_string(k);
          if (auto f = ParseField(fj, rpath + ".fields." + fname, true)) {
            rec.fields.push_back(std::move(*f));
          }
        }
        doc.records.push_back(std::move(rec));
      }
    }
    if (j.contains("metadata")) ParseMetadata(j["metadata"], doc.metadata);
    if (!diags.empty()) return std::nullopt;
    return doc;
  }

  void ParseMetadata(const Json& j, DocMetadata& meta) {
    if (!j.is_object()) {
      Error(DiagCode::kInvalidValue, "metadata", "expected an object");
      return;
    }
    RejectUnknownKeys(j, {"target_lines", "deprioritized", "created_seq", "use_count",
                          "lines_achieved"},
                      "metadata");
    if (j.contains("target_lines")) {
      const Json& t = j["target_lines"];
      if (!t.is_array()) {
        Error(DiagCode::kInvalidValue, "metadata.target_lines", "expected an array");
      } else {
        for (const Json& e : t) {
          if (e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_number_unsigned()) {
            meta.target_lines.push_back({e[0].get<std::string>(), e[1].get<std::uint32_t>()});
          } else if (e.is_object() && e.contains("path") && e.contains("line") &&
                     e["path"].is_string() && e["line"].is_number_unsigned()) {
            meta.target_lines.push_back({e["path"].get<std::string>(), e["line"].get<std::uint32_t>()});
          } else {
            Error(DiagCode::kInvalidValue, "metadata.target_lines",
                  "entries are [path, line] with a 1-based line");
          }
        }
      }
    }
    if (j.contains("deprioritized")) {
      if (j["deprioritized"].is_boolean()) {
        meta.deprioritized = j["deprioritized"].get<bool>();
      } else {
        Error(DiagCode::kInvalidValue, "metadata.deprioritized", "expected a boolean");
      }
    }
    for (auto [key, slot] : {std::pair{"created_seq", &meta.created_seq},
                             std::pair{"use_count", &meta.use_count},
                             std::pair{"lines_achieved", &meta.lines_achieved}}) {
      if (!j.contains(key)) continue;
      if (auto v = ParseCount(j[key], std::string("metadata.") + key)) *slot = *v;
    }
  }
};

OrderedJson IntToJson(Int128 v) {
  if (v >= 0 && v <= static_cast<Int128>(UINT64_MAX)) {
    return static_cast<std::uint64_t>(v);
  }
  if (v < 0 && v >= static_cast<Int128>(INT64_MIN)) {
    return static_cast<std::int64_t>(v);
  }
  return Int128ToString(v);
}

OrderedJson BytesToJson(const Bytes& b) {
  bool printable = true;
  for (std::uint8_t c : b) {
    if (c < 0x20 || c >= 0x7F) printable = false;
  }
  if (printable) return ToString(b);
  OrderedJson j;
  j["hex"] = HexEncode(b);
  return j;
}

OrderedJson SizeToJson(const SizeSpec& s) {
  if (const auto* f = std::get_if<SizeFixed>(&s)) return f->n;
  if (const auto* r = std::get_if<SizeRef>(&s)) {
    OrderedJson j;
    j["ref"] = r->field;
    j["unit"] = r->unit == SizeUnit::kBytes ? "bytes" : "elements";
    return j;
  }
  const auto& r = std::get<SizeRange>(s);
  OrderedJson j;
  j["min"] = r.min;
  j["max"] = r.max;
  return j;
}

OrderedJson FieldToJson(const Field& f) {
  OrderedJson j;
  j["name"] = f.name;
  if (f.as_bool) {
    j["type"] = "bool";
    if (f.hint) j["hint"] = *f.hint;
    return j;
  }
  j["type"] = FieldKindName(f.kind);
  if (f.kind == FieldKind::kInt) {
    j["width"] = f.width;
    j["signed"] = f.is_signed;
    if (f.endian) j["endian"] = EndiannessName(*f.endian);
  }
  if (!std::holds_alternative<std::monostate>(f.size)) {
    j[f.kind == FieldKind::kArray ? "count" : "size"] = SizeToJson(f.size);
  }
  std::visit(
      [&j](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, IntRange>) {
          j["range"] = OrderedJson::array({IntToJson(c.lo), IntToJson(c.hi)});
        } else if constexpr (std::is_same_v<T, IntEnum>) {
          OrderedJson a = OrderedJson::array();
          for (Int128 v : c.values) a.push_back(IntToJson(v));
          j["enum"] = a;
        } else if constexpr (std::is_same_v<T, IntConst>) {
          j["const"] = IntToJson(c.value);
        } else if constexpr (std::is_same_v<T, BytesEnum>) {
          OrderedJson a = OrderedJson::array();
          for (const Bytes& v : c.values) a.push_back(BytesToJson(v));
          j["enum"] = a;
        } else if constexpr (std::is_same_v<T, BytesConst>) {
          j["const"] = BytesToJson(c.value);
        } else if constexpr (std::is_same_v<T, Terminator>) {
          j["terminator"] = BytesToJson(c.sequence);
        }
      },
      f.constraint);
  if (f.kind == FieldKind::kRecordRef) j["record"] = f.record;
  if (f.kind == FieldKind::kArray && f.element) j["element"] = FieldToJson(*f.element);
  if (f.generator) {
    OrderedJson g;
    if (const auto* b = std::get_if<BuiltinGenerator>(&*f.generator)) {
      g["builtin"] = b->name;
      OrderedJson args = OrderedJson::object();
      for (const auto& [k, v] : b->args) args[k] = v;
      g["args"] = args;
    } else {
      g["command"] = std::get<ExternalGenerator>(*f.generator).command;
    }
    j["generator"] = g;
  }
  if (f.encoder) j["encoder"] = *f.encoder;
  if (f.hint) j["hint"] = *f.hint;
  return j;
}

}  // namespace

Expected<TestlangDoc, Diagnostics> ParseTestlang(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    return MakeUnexpected(Diagnostics{{Severity::kError, DiagCode::kSyntaxError,
                                       "byte " + std::to_string(e.byte), e.what()}});
  }
  Parser parser;
  auto doc = parser.ParseDoc(j);
  if (!doc) return MakeUnexpected(std::move(parser.diags));
  return std::move(*doc);
}

std::string ToText(const TestlangDoc& doc) {
  OrderedJson j;
  j["schema_version"] = doc.schema_version;
  j["mode"] = DocModeName(doc.mode);
  j["default_endian"] = EndiannessName(doc.default_endianness);
  j["is_partial"] = doc.is_partial;
  OrderedJson records = OrderedJson::array();
  for (const Record& r : doc.records) {
    OrderedJson rj;
    rj["name"] = r.name;
    OrderedJson fields = OrderedJson::array();
    for (const Field& f : r.fields) fields.push_back(FieldToJson(f));
    rj["fields"] = fields;
    records.push_back(rj);
  }
  j["records"] = records;
  OrderedJson meta;
  OrderedJson lines = OrderedJson::array();
  for (const SourceLine& l : doc.metadata.target_lines) {
    lines.push_back(OrderedJson::array({l.path, l.line}));
  }
  meta["target_lines"] = lines;
  meta["deprioritized"] = doc.metadata.deprioritized;
  meta["created_seq"] = doc.metadata.created_seq;
  meta["use_count"] = doc.metadata.use_count;
  meta["lines_achieved"] = doc.metadata.lines_achieved;
  j["metadata"] = meta;
  return j.dump(2) + "\n";
}

std::string DocId(const TestlangDoc& doc) {
  // Pool bookkeeping must not change a document's identity.
  TestlangDoc copy = doc;
  copy.metadata.created_seq = 0;
  copy.metadata.use_count = 0;
  copy.metadata.lines_achieved = 0;
  return Sha256Hex(ToText(copy)).substr(0, 16);
}

}  // namespace testforge::testlang
