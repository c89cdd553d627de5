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

// XMI export of requirement expressions using the MBSR profile stereotype,
// and a reader for the exporter's own output.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mbsr/model.hpp"

namespace mbsr {

inline constexpr std::string_view kXmiStereotype =
    "Model_Based_Structured_Requirements_Profile:Requirement_Expression";

/// Tool id of an element or expression: its stored xmi_id, or an opaque id
/// derived from (model uuid, id).
std::string internal_id(const Model& model, std::string_view id);

/// One stereotype application, attributes one per line:
/// xmi:id, base_Class, Id, Text, bound SR slots, then stored attributes in
/// ascending key order. Unbound slots are omitted.
std::string xmi_element(const Model& model, const RequirementExpression& req);

/// Full document for the non-set expressions in scope. Throws UnknownScope.
std::string export_xmi(const Model& model, std::string_view scope);

struct XmiClass {
  std::string xmi_id;
  std::string name;
};

struct XmiRequirement {
  std::string xmi_id;
  std::string base_class;
  std::string id;
  std::string text;
  std::map<SlotKey, std::string> slots;          // internal ids
  std::map<std::string, std::string> properties;  // every other attribute
};

struct XmiDocument {
  std::vector<XmiClass> classes;
  std::vector<XmiRequirement> requirements;
};

/// Throws SyntaxError on malformed XML.
XmiDocument read_xmi(std::string_view xml);

/// Resolves imported slot references to element ids of `model`; references
/// that match no element are dropped.
std::map<SlotKey, std::string> resolve_slots(const Model& model, const XmiRequirement& req);

}  // namespace mbsr
