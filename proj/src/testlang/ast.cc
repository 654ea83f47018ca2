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

#include "testforge/testlang/ast.h"

#include <json.hpp>

namespace testforge::testlang {

namespace {

using Json = nlohmann::ordered_json;

template <typename Node>
Node* FindIn(Node& node, std::string_view path) {
  if (node.path == path) return &node;
  // Only descend into children whose path is a prefix of the target.
  for (auto& child : node.children) {
    std::string_view cp = child.path;
    if (path.size() >= cp.size() && path.substr(0, cp.size()) == cp &&
        (path.size() == cp.size() || path[cp.size()] == '.' ||
         path[cp.size()] == '[')) {
      if (auto* found = FindIn(child, path)) return found;
    }
  }
  return nullptr;
}

void CollectLeaves(const AstNode& node, std::vector<const AstNode*>& out) {
  if (node.IsLeaf()) {
    out.push_back(&node);
    return;
  }
  for (const AstNode& c : node.children) CollectLeaves(c, out);
}

FieldKind KindFromName(std::string_view name) {
  for (FieldKind k : {FieldKind::kInt, FieldKind::kBytes, FieldKind::kString,
                      FieldKind::kArray, FieldKind::kRecordRef, FieldKind::kCustom}) {
    if (FieldKindName(k) == name) return k;
  }
  throw std::invalid_argument("unknown node kind");
}

Json NodeToJson(const AstNode& n) {
  Json j;
  j["name"] = n.name;
  j["path"] = n.path;
  j["kind"] = FieldKindName(n.kind);
  if (n.kind == FieldKind::kInt) j["int"] = Int128ToString(n.int_value);
  if (n.kind == FieldKind::kBytes || n.kind == FieldKind::kString ||
      n.kind == FieldKind::kCustom) {
    j["content"] = HexEncode(n.content);
  }
  j["span"] = Json::array({n.span.offset, n.span.length});
  j["ok"] = n.constraint_satisfied;
  if (n.pinned) j["pinned"] = true;
  if (n.fdp_call) j["fdp_call"] = *n.fdp_call;
  if (!n.children.empty()) {
    Json children = Json::array();
    for (const AstNode& c : n.children) children.push_back(NodeToJson(c));
    j["children"] = children;
  }
  return j;
}

AstNode NodeFromJson(const Json& j) {
  AstNode n;
  n.name = j.at("name").get<std::string>();
  n.path = j.at("path").get<std::string>();
  n.kind = KindFromName(j.at("kind").get<std::string>());
  if (j.contains("int")) {
    auto v = ParseInt128(j["int"].get<std::string>());
    if (!v) throw std::invalid_argument("bad int value");
    n.int_value = *v;
  }
  if (j.contains("content")) {
    auto b = HexDecode(j["content"].get<std::string>());
    if (!b) throw std::invalid_argument("bad content hex");
    n.content = std::move(*b);
  }
  n.span = {j.at("span").at(0).get<std::size_t>(), j.at("span").at(1).get<std::size_t>()};
  n.constraint_satisfied = j.at("ok").get<bool>();
  n.pinned = j.value("pinned", false);
  if (j.contains("fdp_call")) n.fdp_call = j["fdp_call"].get<std::size_t>();
  if (j.contains("children")) {
    for (const Json& c : j["children"]) n.children.push_back(NodeFromJson(c));
  }
  return n;
}

}  // namespace

std::string_view GenModeName(GenMode m) {
  return m == GenMode::kCoverage ? "coverage" : "crash";
}

const AstNode* FindNode(const AstNode& root, std::string_view path) {
  return FindIn(root, path);
}

AstNode* FindNode(AstNode& root, std::string_view path) { return FindIn(root, path); }

std::vector<const AstNode*> Leaves(const AstNode& root) {
  std::vector<const AstNode*> out;
  CollectLeaves(root, out);
  return out;
}

std::string AstToText(const TestlangAst& ast) {
  Json j;
  j["doc_id"] = ast.doc_id;
  j["mode"] = GenModeName(ast.mode_used);
  j["violated_fields"] = ast.violated_fields;
  j["root"] = NodeToJson(ast.root);
  return j.dump() + "\n";
}

Expected<TestlangAst, std::string> AstFromText(std::string_view text) {
  try {
    Json j = Json::parse(text.begin(), text.end());
    TestlangAst ast;
    ast.doc_id = j.at("doc_id").get<std::string>();
    std::string mode = j.at("mode").get<std::string>();
    if (mode != "coverage" && mode != "crash") return MakeUnexpected(std::string("bad mode"));
    ast.mode_used = mode == "coverage" ? GenMode::kCoverage : GenMode::kCrash;
    ast.violated_fields = j.at("violated_fields").get<std::vector<std::string>>();
    ast.root = NodeFromJson(j.at("root"));
    return ast;
  } catch (const std::exception& e) {
    return MakeUnexpected(std::string(e.what()));
  }
}

}  // namespace testforge::testlang
