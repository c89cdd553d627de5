// Copyright 2026 The mbsr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mbsr/reqif.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "mbsr/blockfile.hpp"
#include "mbsr/error.hpp"

namespace mbsr {

namespace {

std::string esc(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string ad_id(const std::string& key) { return "AD-" + key; }
std::string so_id(const std::string& id) { return "SO-" + id; }

// Ordered values exported for one expression: (mapping key, value).
std::vector<std::pair<std::string, std::string>> values_of(const RequirementExpression& e,
                                                           const ReqifMapping& mapping) {
  std::vector<std::pair<std::string, std::string>> out;
  if (mapping.count("text")) out.emplace_back("text", e.text);
  if (e.statement) {
    for (SlotKey k : kAllSlots) {
      std::string key(to_string(k));
      if (mapping.count(key) && e.statement->filled(k)) {
        out.emplace_back(key, e.statement->slot(k)->text);
      }
    }
  }
  std::vector<std::string> keys;
  for (const auto& [k, v] : e.attributes) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), attribute_key_less);
  for (const auto& k : keys) {
    if (!mapping.count(k)) {
      throw Error(ErrorCode::MappingMissing,
                  "attribute " + k + " of '" + e.id + "' has no ReqIF mapping");
    }
    out.emplace_back(k, to_string(e.attributes.at(k)));
  }
  return out;
}

class Writer {
 public:
  explicit Writer(const Model& model) : model_(model) {}

  void hierarchy(const std::string& id, int depth, std::string& out) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    out += pad + "<SPEC-HIERARCHY IDENTIFIER=\"SH-" + esc(id) + "-" +
           std::to_string(counter_++) + "\">\n";
    out += pad + "  <OBJECT><SPEC-OBJECT-REF>" + esc(so_id(id)) +
           "</SPEC-OBJECT-REF></OBJECT>\n";
    const auto& e = model_.expression(id);
    if (e.is_set() && !e.members->empty()) {
      out += pad + "  <CHILDREN>\n";
      for (const auto& m : *e.members) hierarchy(m, depth + 2, out);
      out += pad + "  </CHILDREN>\n";
    }
    out += pad + "</SPEC-HIERARCHY>\n";
  }

 private:
  const Model& model_;
  int counter_ = 1;
};

}  // namespace

ReqifMapping parse_reqif_mapping(std::string_view text) {
  ReqifMapping mapping;
  for (const auto& b : parse_blocks(text)) {
    if (b.kind != "reqif" || b.id != "mapping") {
      throw Error(ErrorCode::SyntaxError, "line " + std::to_string(b.line) +
                                              ": expected [reqif mapping]");
    }
    for (const auto& e : b.entries) {
      if (e.value.empty()) {
        throw Error(ErrorCode::SyntaxError,
                    "line " + std::to_string(e.line) + ": empty mapping for " + e.key);
      }
      mapping[e.key] = e.value;
    }
  }
  return mapping;
}

ReqifMapping load_reqif_mapping(const std::string& path) {
  return parse_reqif_mapping(read_file(path));
}

std::string export_reqif(const Model& model, std::string_view scope,
                         const ReqifMapping& mapping) {
  // Expressions in scope, sets included, and the hierarchy roots.
  std::vector<std::string> objects;
  std::vector<std::string> roots;
  if (scope == kScopeAll) {
    for (const auto& [id, e] : model.expressions()) {
      objects.push_back(id);
      if (model.containing_sets(id).empty()) roots.push_back(id);
    }
  } else {
    model.scope_expressions(scope);  // throws UnknownScope
    const auto& root = model.expression(scope);
    if (root.is_set()) {
      objects = model.transitive_members(root.id);
      objects.push_back(root.id);
      std::sort(objects.begin(), objects.end());
      objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
      roots = *root.members;
    } else {
      objects = roots = {root.id};
    }
  }

  std::vector<std::vector<std::pair<std::string, std::string>>> values;
  std::set<std::string> used;
  for (const auto& id : objects) {
    values.push_back(values_of(model.expression(id), mapping));
    for (const auto& [k, v] : values.back()) used.insert(k);
  }

  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<REQ-IF xmlns=\"http://www.omg.org/spec/ReqIF/20110401/reqif.xsd\">\n"
      "  <THE-HEADER>\n"
      "    <REQ-IF-HEADER IDENTIFIER=\"H-" + esc(model.model_uuid()) + "\">\n"
      "      <TITLE>" + esc(model.model_uuid()) + "</TITLE>\n"
      "    </REQ-IF-HEADER>\n"
      "  </THE-HEADER>\n"
      "  <CORE-CONTENT>\n"
      "    <REQ-IF-CONTENT>\n"
      "      <DATATYPES>\n"
      "        <DATATYPE-DEFINITION-STRING IDENTIFIER=\"DT-String\" LONG-NAME=\"String\" "
      "MAX-LENGTH=\"65535\"/>\n"
      "      </DATATYPES>\n"
      "      <SPEC-TYPES>\n"
      "        <SPEC-OBJECT-TYPE IDENTIFIER=\"SOT-Expression\" LONG-NAME=\"Requirement "
      "Expression\">\n"
      "          <SPEC-ATTRIBUTES>\n";
  for (const auto& [key, name] : mapping) {
    if (!used.count(key)) continue;
    out += "            <ATTRIBUTE-DEFINITION-STRING IDENTIFIER=\"" + esc(ad_id(key)) +
           "\" LONG-NAME=\"" + esc(name) +
           "\"><TYPE><DATATYPE-DEFINITION-STRING-REF>DT-String"
           "</DATATYPE-DEFINITION-STRING-REF></TYPE></ATTRIBUTE-DEFINITION-STRING>\n";
  }
  out +=
      "          </SPEC-ATTRIBUTES>\n"
      "        </SPEC-OBJECT-TYPE>\n"
      "        <SPECIFICATION-TYPE IDENTIFIER=\"ST-Scope\" LONG-NAME=\"Scope\"/>\n"
      "      </SPEC-TYPES>\n"
      "      <SPEC-OBJECTS>\n";
  for (std::size_t i = 0; i < objects.size(); ++i) {
    out += "        <SPEC-OBJECT IDENTIFIER=\"" + esc(so_id(objects[i])) + "\" LONG-NAME=\"" +
           esc(objects[i]) + "\">\n";
    out += "          <TYPE><SPEC-OBJECT-TYPE-REF>SOT-Expression</SPEC-OBJECT-TYPE-REF></TYPE>\n";
    out += "          <VALUES>\n";
    for (const auto& [k, v] : values[i]) {
      out += "            <ATTRIBUTE-VALUE-STRING THE-VALUE=\"" + esc(v) +
             "\"><DEFINITION><ATTRIBUTE-DEFINITION-STRING-REF>" + esc(ad_id(k)) +
             "</ATTRIBUTE-DEFINITION-STRING-REF></DEFINITION></ATTRIBUTE-VALUE-STRING>\n";
    }
    out += "          </VALUES>\n";
    out += "        </SPEC-OBJECT>\n";
  }
  out +=
      "      </SPEC-OBJECTS>\n"
      "      <SPECIFICATIONS>\n"
      "        <SPECIFICATION IDENTIFIER=\"SP-" + esc(std::string(scope)) + "\" LONG-NAME=\"" +
      esc(std::string(scope)) + "\">\n"
      "          <TYPE><SPECIFICATION-TYPE-REF>ST-Scope</SPECIFICATION-TYPE-REF></TYPE>\n"
      "          <CHILDREN>\n";
  Writer w(model);
  for (const auto& r : roots) w.hierarchy(r, 6, out);
  out +=
      "          </CHILDREN>\n"
      "        </SPECIFICATION>\n"
      "      </SPECIFICATIONS>\n"
      "    </REQ-IF-CONTENT>\n"
      "  </CORE-CONTENT>\n"
      "</REQ-IF>\n";
  return out;
}

}  // namespace mbsr
