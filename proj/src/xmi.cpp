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

#include "mbsr/xmi.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "mbsr/error.hpp"

namespace mbsr {

namespace {

constexpr std::string_view kHeader =
    "<?xml version='1.0' encoding='UTF-8'?>\n"
    "<xmi:XMI xmi:version='2.5'"
    " xmlns:xmi='http://www.omg.org/spec/XMI/20131001'"
    " xmlns:uml='http://www.omg.org/spec/UML/20131001'"
    " xmlns:Model_Based_Structured_Requirements_Profile="
    "'http://www.omg.org/spec/SysML/profiles/mbsr'>\n";

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\'': out += "&apos;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
  return out;
}

void attr(std::string& out, std::string_view name, std::string_view value) {
  out += '\n';
  out += name;
  out += "='";
  out += escape(value);
  out += '\'';
}

std::string attribute_text(const Model& model, const AttributeValue& v) {
  if (const auto* ref = std::get_if<ElementRef>(&v)) return internal_id(model, ref->element_id);
  return to_string(v);
}

}  // namespace

std::string internal_id(const Model& model, std::string_view id) {
  if (const auto* el = model.find_element(id); el && !el->xmi_id.empty()) return el->xmi_id;
  if (const auto* e = model.find_expression(id); e && !e->xmi_id.empty()) return e->xmi_id;
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(
                    text::fnv1a64(model.model_uuid() + "/" + std::string(id))));
  return "_mbsr_" + std::string(buf);
}

std::string xmi_element(const Model& model, const RequirementExpression& req) {
  const std::string base = internal_id(model, req.id);
  std::string out = "<" + std::string(kXmiStereotype);
  attr(out, "xmi:id", base + "_");
  attr(out, "base_Class", base);
  attr(out, "Id", req.id);
  attr(out, "Text", req.text);
  if (req.statement) {
    for (SlotKey k : kAllSlots) {
      const auto& slot = req.statement->slot(k);
      if (slot && slot->binding) {
        attr(out, slot_property_name(k), internal_id(model, *slot->binding));
      }
    }
  }
  std::vector<std::string> keys;
  for (const auto& [k, v] : req.attributes) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), attribute_key_less);
  for (const auto& k : keys) {
    const AttributeDef* def = model.catalog().find_attribute(k);
    if (!def || def->derived) continue;
    attr(out, def->export_name(), attribute_text(model, req.attributes.at(k)));
  }
  out += " />";
  return out;
}

std::string export_xmi(const Model& model, std::string_view scope) {
  auto ids = model.scope_expressions(scope);
  std::set<std::string> referenced;
  for (const auto& id : ids) {
    const auto& e = model.expression(id);
    if (!e.statement) continue;
    for (const auto& slot : e.statement->slots) {
      if (slot && slot->binding) referenced.insert(*slot->binding);
    }
  }

  std::string out(kHeader);
  out += "<uml:Model xmi:type='uml:Model' xmi:id='" + escape(internal_id(model, "")) +
         "' name='" + escape(model.model_uuid()) + "'>\n";
  for (const auto& id : ids) {
    out += "<packagedElement xmi:type='uml:Class' xmi:id='" +
           escape(internal_id(model, id)) + "' name='" + escape(id) + "' />\n";
  }
  for (const auto& id : referenced) {
    out += "<packagedElement xmi:type='uml:Class' xmi:id='" +
           escape(internal_id(model, id)) + "' name='" + escape(model.find_element(id)->name) +
           "' />\n";
  }
  out += "</uml:Model>\n";
  for (const auto& id : ids) out += xmi_element(model, model.expression(id)) + "\n";
  out += "</xmi:XMI>\n";
  return out;
}

XmiDocument read_xmi(std::string_view xml) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(xml)};
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::SyntaxError,
                "line " + std::to_string(e.line()) + ": " + e.message());
  }

  XmiDocument doc;
  const auto root = tree.get_child_optional("xmi:XMI");
  if (!root) throw Error(ErrorCode::SyntaxError, "missing xmi:XMI root element");

  for (const auto& [name, node] : *root) {
    if (name == "uml:Model") {
      for (const auto& [child, el] : node) {
        if (child != "packagedElement") continue;
        doc.classes.push_back({el.get("<xmlattr>.xmi:id", ""), el.get("<xmlattr>.name", "")});
      }
    } else if (name == kXmiStereotype) {
      XmiRequirement r;
      for (const auto& [key, value] : node.get_child("<xmlattr>", pt::ptree())) {
        const std::string v = value.data();
        if (key == "xmi:id") {
          r.xmi_id = v;
        } else if (key == "base_Class") {
          r.base_class = v;
        } else if (key == "Id") {
          r.id = v;
        } else if (key == "Text") {
          r.text = v;
        } else {
          bool slot = false;
          for (SlotKey k : kAllSlots) {
            if (key == slot_property_name(k)) {
              r.slots[k] = v;
              slot = true;
            }
          }
          if (!slot) r.properties[key] = v;
        }
      }
      doc.requirements.push_back(std::move(r));
    }
  }
  return doc;
}

std::map<SlotKey, std::string> resolve_slots(const Model& model, const XmiRequirement& req) {
  std::map<std::string, std::string> by_internal;
  for (const auto& [id, el] : model.elements()) by_internal[internal_id(model, id)] = id;
  std::map<SlotKey, std::string> out;
  for (const auto& [k, ref] : req.slots) {
    if (auto it = by_internal.find(ref); it != by_internal.end()) out[k] = it->second;
  }
  return out;
}

}  // namespace mbsr
