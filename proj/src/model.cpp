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

#include "mbsr/model.hpp"

#include <algorithm>

#include "mbsr/error.hpp"

namespace mbsr {

namespace {

constexpr std::string_view kRulePrefix = "rule:";
constexpr std::string_view kCharacteristicPrefix = "characteristic:";

[[noreturn]] void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace

std::string_view to_string(ElementKind k) {
  switch (k) {
    case ElementKind::Block: return "Block";
    case ElementKind::Mode: return "Mode";
    case ElementKind::Quantity: return "Quantity";
    case ElementKind::Activity: return "Activity";
    case ElementKind::Other: return "Other";
  }
  return "Other";
}

std::optional<ElementKind> element_kind_from_string(std::string_view s) {
  for (auto k : {ElementKind::Block, ElementKind::Mode, ElementKind::Quantity,
                 ElementKind::Activity, ElementKind::Other}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view to_string(ExpressionKind k) {
  return k == ExpressionKind::Requirement ? "Requirement" : "Need";
}

std::optional<ExpressionKind> expression_kind_from_string(std::string_view s) {
  if (s == "Requirement") return ExpressionKind::Requirement;
  if (s == "Need") return ExpressionKind::Need;
  return std::nullopt;
}

std::string_view to_string(LinkKind k) {
  switch (k) {
    case LinkKind::Containment: return "Containment";
    case LinkKind::Derive: return "Derive";
    case LinkKind::Refine: return "Refine";
    case LinkKind::Satisfy: return "Satisfy";
    case LinkKind::Verify: return "Verify";
    case LinkKind::Copy: return "Copy";
    case LinkKind::Trace: return "Trace";
    case LinkKind::Violate: return "Violate";
  }
  return "Trace";
}

std::optional<LinkKind> link_kind_from_string(std::string_view s) {
  for (LinkKind k : kAllLinkKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string to_string(const AttributeValue& v) {
  struct Visitor {
    std::string operator()(const EnumToken& e) const { return e.token; }
    std::string operator()(const FreeText& t) const { return t.text; }
    std::string operator()(const ElementRef& r) const { return r.element_id; }
    std::string operator()(const Timestamp& t) const { return text::format_timestamp(t); }
  };
  return std::visit(Visitor{}, v);
}

std::string rule_node(std::string_view rule_id) {
  return std::string(kRulePrefix) + std::string(rule_id);
}

std::string characteristic_node(std::string_view characteristic_id) {
  return std::string(kCharacteristicPrefix) + std::string(characteristic_id);
}

Model::Model() : Model(std::make_shared<const Catalog>(Catalog::defaults())) {}

Model::Model(std::shared_ptr<const Catalog> catalog)
    : catalog_(std::move(catalog)),
      glossary_(catalog_->settings().case_insensitive_terms) {}

Timestamp Model::now() const {
  if (clock_) return clock_();
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

// ---- elements -----------------------------------------------------------

void Model::add_element(ModelElement element) {
  if (!text::is_valid_identifier(element.element_id)) {
    fail(ErrorCode::InvalidId, "invalid element id '" + element.element_id + "'");
  }
  if (elements_.count(element.element_id) || expressions_.count(element.element_id)) {
    fail(ErrorCode::DuplicateId, "id '" + element.element_id + "' already in use");
  }
  if (text::trim(element.name).empty()) {
    fail(ErrorCode::InvalidName, "element '" + element.element_id + "' has an empty name");
  }
  std::string id = element.element_id;
  elements_.emplace(std::move(id), std::move(element));
}

const ModelElement* Model::find_element(std::string_view id) const {
  auto it = elements_.find(std::string(id));
  return it == elements_.end() ? nullptr : &it->second;
}

ElementIndex Model::element_index() const {
  ElementIndex index;
  for (const auto& [id, e] : elements_) index.emplace(e.name, id);
  return index;
}

std::set<std::string> Model::element_names() const {
  std::set<std::string> names;
  for (const auto& [_, e] : elements_) names.insert(e.name);
  return names;
}

// ---- expressions --------------------------------------------------------

void Model::validate_attribute(const std::string& key, const AttributeValue& v) const {
  const AttributeDef* def = catalog_->find_attribute(key);
  if (!def) fail(ErrorCode::UnknownAttributeKey, "unknown attribute key '" + key + "'");
  if (def->derived) {
    fail(ErrorCode::InvalidAttributeToken,
         key + " is derived from the expression and cannot be stored");
  }
  switch (def->value_kind) {
    case ValueKind::Enum: {
      const auto* tok = std::get_if<EnumToken>(&v);
      if (!tok) fail(ErrorCode::InvalidAttributeToken, key + " expects an enumeration token");
      if (std::find(def->value_set.begin(), def->value_set.end(), tok->token) ==
          def->value_set.end()) {
        fail(ErrorCode::InvalidAttributeToken,
             "'" + tok->token + "' is not in the value set of " + key + " {" +
                 text::join(def->value_set, ", ") + "}");
      }
      break;
    }
    case ValueKind::Text:
      if (!std::holds_alternative<FreeText>(v)) {
        fail(ErrorCode::InvalidAttributeToken, key + " expects free text");
      }
      break;
    case ValueKind::ElementRef: {
      const auto* ref = std::get_if<ElementRef>(&v);
      if (!ref) fail(ErrorCode::InvalidAttributeToken, key + " expects an element reference");
      if (!elements_.count(ref->element_id)) {
        fail(ErrorCode::UnknownElement, key + " references unknown element '" +
                                            ref->element_id + "'");
      }
      break;
    }
    case ValueKind::Timestamp:
      if (!std::holds_alternative<Timestamp>(v)) {
        fail(ErrorCode::InvalidAttributeToken, key + " expects a timestamp");
      }
      break;
  }
}

void Model::validate_expression(const RequirementExpression& e) const {
  if (!text::is_valid_identifier(e.id)) fail(ErrorCode::InvalidId, "invalid id '" + e.id + "'");
  if (expressions_.count(e.id) || elements_.count(e.id)) {
    fail(ErrorCode::DuplicateId, "id '" + e.id + "' already in use");
  }
  for (const auto& [key, value] : e.attributes) validate_attribute(key, value);
  if (e.statement) {
    for (const auto& slot : e.statement->slots) {
      if (slot && slot->binding && !elements_.count(*slot->binding)) {
        fail(ErrorCode::UnknownElement,
             e.id + ": slot bound to unknown element '" + *slot->binding + "'");
      }
    }
  }
}

void Model::reparse(RequirementExpression& e) const {
  e.statement.reset();
  if (e.is_set() || e.element_kind != ExpressionKind::Requirement) return;
  if (text::trim(e.text).empty()) return;
  auto index = element_index();
  e.statement = parse_statement(e.text, glossary_, *catalog_, &index).statement;
}

void Model::stamp(RequirementExpression& e) const {
  const auto* def = catalog_->find_attribute("A14");
  if (def && def->value_kind == ValueKind::Timestamp) e.attributes["A14"] = now();
}

void Model::add_expression(RequirementExpression expression) {
  if (expression.is_set()) {
    add_set(std::move(expression));
    return;
  }
  validate_expression(expression);
  if (!expression.statement) reparse(expression);
  std::string id = expression.id;
  expressions_.emplace(std::move(id), std::move(expression));
}

void Model::add_set(RequirementExpression set) {
  if (!set.members) set.members.emplace();
  std::set<std::string> seen;
  for (const auto& m : *set.members) {
    if (m == set.id) {
      fail(ErrorCode::MembershipCycle, "set '" + set.id + "' contains itself");
    }
  }
  validate_expression(set);
  for (const auto& m : *set.members) {
    if (!expressions_.count(m)) {
      fail(ErrorCode::UnknownMember, "set '" + set.id + "' member '" + m + "' does not exist");
    }
    if (!seen.insert(m).second) {
      fail(ErrorCode::DuplicateId, "set '" + set.id + "' lists '" + m + "' twice");
    }
  }
  // Members already exist and the set id is new, so no existing set can
  // reach this one: the membership graph stays acyclic.
  set.statement.reset();
  std::string id = set.id;
  expressions_.emplace(std::move(id), std::move(set));
}

const RequirementExpression* Model::find_expression(std::string_view id) const {
  auto it = expressions_.find(std::string(id));
  return it == expressions_.end() ? nullptr : &it->second;
}

const RequirementExpression& Model::expression(std::string_view id) const {
  const auto* e = find_expression(id);
  if (!e) fail(ErrorCode::UnknownId, "no expression '" + std::string(id) + "'");
  return *e;
}

std::optional<AttributeValue> Model::get_attribute(std::string_view id,
                                                   std::string_view key) const {
  const auto& e = expression(id);
  if (!catalog_->find_attribute(key)) {
    fail(ErrorCode::UnknownAttributeKey, "unknown attribute key '" + std::string(key) + "'");
  }
  if (key == "A15") return FreeText{e.id};
  if (key == "A16") return FreeText{e.name};
  auto it = e.attributes.find(std::string(key));
  if (it == e.attributes.end()) return std::nullopt;
  return it->second;
}

AttributeValue Model::make_attribute_value(std::string_view key,
                                           std::string_view raw) const {
  const AttributeDef* def = catalog_->find_attribute(key);
  if (!def) fail(ErrorCode::UnknownAttributeKey, "unknown attribute key '" + std::string(key) + "'");
  switch (def->value_kind) {
    case ValueKind::Enum: return EnumToken{std::string(raw)};
    case ValueKind::Text: return FreeText{std::string(raw)};
    case ValueKind::ElementRef: return ElementRef{std::string(raw)};
    case ValueKind::Timestamp:
      if (auto t = text::parse_timestamp(raw)) return *t;
      fail(ErrorCode::InvalidAttributeToken,
           std::string(key) + ": '" + std::string(raw) + "' is not YYYY-MM-DDTHH:MM:SSZ");
  }
  return FreeText{std::string(raw)};
}

void Model::set_attribute(std::string_view id, std::string_view key, AttributeValue value) {
  auto it = expressions_.find(std::string(id));
  if (it == expressions_.end()) fail(ErrorCode::UnknownId, "no expression '" + std::string(id) + "'");
  validate_attribute(std::string(key), value);
  it->second.attributes[std::string(key)] = std::move(value);
  if (key != "A14") stamp(it->second);
}

void Model::set_attribute_text(std::string_view id, std::string_view key,
                               std::string_view value) {
  set_attribute(id, key, make_attribute_value(key, value));
}

void Model::set_text(std::string_view id, std::string text) {
  auto it = expressions_.find(std::string(id));
  if (it == expressions_.end()) fail(ErrorCode::UnknownId, "no expression '" + std::string(id) + "'");
  if (auto src = copy_source(id)) {
    fail(ErrorCode::CopyReadOnly,
         "'" + std::string(id) + "' is a read-only copy of '" + *src + "'");
  }
  it->second.text = std::move(text);
  reparse(it->second);
  stamp(it->second);
  propagate_copies(it->first);
}

void Model::propagate_copies(const std::string& source_id) {
  std::set<std::string> visited{source_id};
  std::vector<std::string> frontier{source_id};
  while (!frontier.empty()) {
    std::string src = frontier.back();
    frontier.pop_back();
    const std::string& source_text = expressions_.at(src).text;
    for (const auto* link : links_from(src)) {
      if (link->kind != LinkKind::Copy) continue;
      auto target = expressions_.find(link->target_id);
      if (target == expressions_.end() || !visited.insert(target->first).second) continue;
      if (target->second.text != source_text) {
        target->second.text = source_text;
        reparse(target->second);
        stamp(target->second);
      }
      frontier.push_back(target->first);
    }
  }
}

std::vector<std::string> Model::transitive_members(std::string_view set_id) const {
  const auto& root = expression(set_id);
  std::vector<std::string> out;
  std::set<std::string> visited{root.id};
  std::function<void(const RequirementExpression&)> walk =
      [&](const RequirementExpression& set) {
        for (const auto& m : *set.members) {
          if (!visited.insert(m).second) continue;
          out.push_back(m);
          const auto& child = expressions_.at(m);
          if (child.is_set()) walk(child);
        }
      };
  if (root.is_set()) walk(root);
  return out;
}

std::vector<std::string> Model::scope_expressions(std::string_view scope) const {
  std::vector<std::string> out;
  if (scope == kScopeAll || scope.empty()) {
    for (const auto& [id, e] : expressions_) {
      if (!e.is_set()) out.push_back(id);
    }
    return out;
  }
  const auto* root = find_expression(scope);
  if (!root) fail(ErrorCode::UnknownScope, "unknown scope '" + std::string(scope) + "'");
  if (!root->is_set()) return {root->id};
  for (const auto& id : transitive_members(scope)) {
    if (!expressions_.at(id).is_set()) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Model::containing_sets(std::string_view id) const {
  std::vector<std::string> out;
  for (const auto& [sid, e] : expressions_) {
    if (!e.is_set()) continue;
    if (std::find(e.members->begin(), e.members->end(), id) != e.members->end()) {
      out.push_back(sid);
    }
  }
  return out;
}

// ---- glossary -----------------------------------------------------------

void Model::add_term(GlossaryTerm term) {
  for (const auto& a : term.allocations) {
    if (!elements_.count(a)) {
      fail(ErrorCode::UnknownElement,
           "term '" + term.term + "' allocated to unknown element '" + a + "'");
    }
  }
  glossary_.add(std::move(term));
}

void Model::rebind_all() {
  auto index = element_index();
  for (auto& [_, e] : expressions_) {
    if (e.statement) bind_slots(*e.statement, glossary_, index);
  }
}

// ---- nodes and links ----------------------------------------------------

std::optional<NodeType> Model::node_type(std::string_view node_id) const {
  if (node_id.substr(0, kRulePrefix.size()) == kRulePrefix) {
    auto rid = node_id.substr(kRulePrefix.size());
    if (rid == kTbxRuleId || catalog_->find_rule(rid)) return NodeType::Rule;
    return std::nullopt;
  }
  if (node_id.substr(0, kCharacteristicPrefix.size()) == kCharacteristicPrefix) {
    if (catalog_->find_characteristic(node_id.substr(kCharacteristicPrefix.size()))) {
      return NodeType::Characteristic;
    }
    return std::nullopt;
  }
  if (find_expression(node_id)) return NodeType::Expression;
  if (find_element(node_id)) return NodeType::Element;
  return std::nullopt;
}

const TraceLink* Model::find_link(std::string_view link_id) const {
  auto it = links_.find(std::string(link_id));
  return it == links_.end() ? nullptr : &it->second;
}

void Model::insert_link(TraceLink link) {
  std::string id = link.link_id;
  links_[std::move(id)] = std::move(link);
}

void Model::remove_link(std::string_view link_id) { links_.erase(std::string(link_id)); }

std::vector<const TraceLink*> Model::links_from(std::string_view source) const {
  std::vector<const TraceLink*> out;
  for (const auto& [_, l] : links_) {
    if (l.source_id == source) out.push_back(&l);
  }
  return out;
}

std::vector<const TraceLink*> Model::links_to(std::string_view target) const {
  std::vector<const TraceLink*> out;
  for (const auto& [_, l] : links_) {
    if (l.target_id == target) out.push_back(&l);
  }
  return out;
}

std::optional<std::string> Model::copy_source(std::string_view id) const {
  for (const auto* l : links_to(id)) {
    if (l->kind == LinkKind::Copy) return l->source_id;
  }
  return std::nullopt;
}

bool operator==(const Model& a, const Model& b) {
  return *a.catalog_ == *b.catalog_ && a.uuid_ == b.uuid_ &&
         a.elements_ == b.elements_ && a.expressions_ == b.expressions_ &&
         a.glossary_ == b.glossary_ && a.links_ == b.links_ &&
         a.metrics_ == b.metrics_;
}

}  // namespace mbsr
