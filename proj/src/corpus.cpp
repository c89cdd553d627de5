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

#include "mbsr/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mbsr/blockfile.hpp"
#include "mbsr/error.hpp"
#include "mbsr/trace.hpp"

namespace mbsr {

namespace {

const std::set<std::string_view> kElementKeys = {"name", "kind", "xmi_id"};
const std::set<std::string_view> kTermKeys = {"synonyms", "definition", "source",
                                              "allocations"};
const std::set<std::string_view> kLinkKeys = {"kind", "source", "target"};
constexpr std::string_view kBindPrefix = "bind.";

std::string where(const Block& b) {
  return "line " + std::to_string(b.line) + ": [" + b.kind + " " + b.id + "]";
}

[[noreturn]] void invalid(const Block& b, const std::string& msg,
                          std::optional<ErrorCode> cause = std::nullopt) {
  throw Error(ErrorCode::ValidationError, where(b) + ": " + msg, cause);
}

void check_keys(const Block& b, const std::set<std::string_view>& allowed) {
  std::set<std::string_view> seen;
  for (const auto& e : b.entries) {
    if (!seen.insert(e.key).second) invalid(b, "duplicate key '" + e.key + "'");
    if (!allowed.count(e.key)) invalid(b, "unknown key '" + e.key + "'");
  }
}

std::string value_or(const Block& b, std::string_view key, std::string fallback = {}) {
  auto v = b.get(key);
  return v ? *v : fallback;
}

std::string required(const Block& b, std::string_view key) {
  auto v = b.get(key);
  if (!v) invalid(b, "missing '" + std::string(key) + "'");
  return *v;
}

// Runs `fn`, re-raising model errors as ValidationError tagged with the block.
template <typename Fn>
void guarded(const Block& b, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    invalid(b, e.what(), e.code());
  }
}

void load_element(Model& model, const Block& b) {
  check_keys(b, kElementKeys);
  ModelElement el;
  el.element_id = b.id;
  el.name = required(b, "name");
  auto kind = element_kind_from_string(value_or(b, "kind", "Other"));
  if (!kind) invalid(b, "unknown element kind '" + value_or(b, "kind") + "'");
  el.kind = *kind;
  el.xmi_id = value_or(b, "xmi_id");
  guarded(b, [&] { model.add_element(std::move(el)); });
}

void load_term(Model& model, const Block& b) {
  check_keys(b, kTermKeys);
  GlossaryTerm t;
  t.term = b.id;
  t.synonyms = text::split_list(value_or(b, "synonyms"));
  t.definition = value_or(b, "definition");
  t.source = value_or(b, "source");
  for (auto& a : text::split_list(value_or(b, "allocations"))) t.allocations.insert(a);
  guarded(b, [&] { model.add_term(std::move(t)); });
}

RequirementExpression read_expression(const Model& model, const Block& b, bool is_set) {
  RequirementExpression e;
  e.id = b.id;
  std::map<SlotKey, std::string> bindings;
  std::set<std::string_view> seen;
  for (const auto& entry : b.entries) {
    const std::string& k = entry.key;
    if (!seen.insert(k).second) invalid(b, "duplicate key '" + k + "'");
    if (k == "name") {
      e.name = entry.value;
    } else if (k == "text") {
      e.text = entry.value;
    } else if (k == "xmi_id") {
      e.xmi_id = entry.value;
    } else if (k == "element_kind") {
      auto kind = expression_kind_from_string(entry.value);
      if (!kind) invalid(b, "unknown element_kind '" + entry.value + "'");
      e.element_kind = *kind;
    } else if (k == "members" && is_set) {
      e.members = text::split_list(entry.value);
    } else if (!is_set && k.rfind(kBindPrefix, 0) == 0) {
      auto slot = slot_from_string(std::string_view(k).substr(kBindPrefix.size()));
      if (!slot) invalid(b, "unknown slot in '" + k + "'");
      bindings[*slot] = entry.value;
    } else if (is_attribute_key_syntax(k)) {
      const AttributeDef* def = model.catalog().find_attribute(k);
      if (def && def->derived) invalid(b, k + " is derived and cannot be assigned");
      guarded(b, [&] { e.attributes[k] = model.make_attribute_value(k, entry.value); });
    } else {
      invalid(b, "unknown key '" + k + "'");
    }
  }
  if (is_set && !e.members) e.members.emplace();

  if (!bindings.empty()) {
    if (e.element_kind != ExpressionKind::Requirement) {
      invalid(b, "only requirements carry slot bindings");
    }
    auto index = model.element_index();
    auto parsed = parse_statement(e.text, model.glossary(), model.catalog(), &index);
    if (!parsed.statement) invalid(b, "bindings given but the text does not parse");
    for (const auto& [slot, element] : bindings) {
      auto& value = parsed.statement->slot(slot);
      if (!value || value->text.empty()) {
        invalid(b, "bind." + std::string(to_string(slot)) + " names an empty slot");
      }
      value->binding = element;
    }
    e.statement = std::move(parsed.statement);
  }
  return e;
}

// Sets may nest, so add them once all of their members exist.
void load_sets(Model& model, std::vector<const Block*> pending) {
  std::set<std::string> declared;
  for (const auto* b : pending) declared.insert(b->id);
  while (!pending.empty()) {
    std::vector<const Block*> next;
    for (const auto* b : pending) {
      auto set = read_expression(model, *b, true);
      bool ready = std::all_of(set.members->begin(), set.members->end(),
                               [&](const std::string& m) {
                                 return model.find_expression(m) || !declared.count(m);
                               });
      if (ready) {
        guarded(*b, [&] { model.add_set(std::move(set)); });
        declared.erase(b->id);
      } else {
        next.push_back(b);
      }
    }
    if (next.size() == pending.size()) {
      invalid(*next.front(), "set membership forms a cycle", ErrorCode::MembershipCycle);
    }
    pending = std::move(next);
  }
}

void load_link(Model& model, const Block& b, const TraceOptions& options,
               std::vector<std::string>* warnings) {
  check_keys(b, kLinkKeys);
  auto kind = link_kind_from_string(required(b, "kind"));
  if (!kind) invalid(b, "unknown link kind '" + required(b, "kind") + "'");
  guarded(b, [&] {
    auto outcome = add_link(model, *kind, required(b, "source"), required(b, "target"),
                            options, b.id);
    if (outcome.link_id != b.id) {
      throw Error(ErrorCode::DuplicateId, "duplicates link '" + outcome.link_id + "'");
    }
    if (warnings) {
      for (auto& w : outcome.warnings) warnings->push_back(where(b) + ": " + w);
    }
  });
}

}  // namespace

Model load_corpus_text(std::string_view text, const LoadOptions& options) {
  auto blocks = parse_blocks(text);
  Model model(options.catalog ? options.catalog
                              : std::make_shared<const Catalog>(Catalog::defaults()));

  std::map<std::string, std::vector<const Block*>> groups;
  for (const auto& b : blocks) {
    static const std::set<std::string_view> kinds = {"element", "term", "requirement",
                                                     "set", "link"};
    if (!kinds.count(b.kind)) {
      throw Error(ErrorCode::SyntaxError,
                  "line " + std::to_string(b.line) + ": unknown block kind '" + b.kind + "'");
    }
    if (b.id.empty()) {
      throw Error(ErrorCode::SyntaxError,
                  "line " + std::to_string(b.line) + ": block without id");
    }
    groups[b.kind].push_back(&b);
  }

  for (const auto* b : groups["element"]) load_element(model, *b);
  for (const auto* b : groups["term"]) load_term(model, *b);
  for (const auto* b : groups["requirement"]) {
    auto e = read_expression(model, *b, false);
    guarded(*b, [&] { model.add_expression(std::move(e)); });
  }
  load_sets(model, groups["set"]);
  TraceOptions trace_options{model.catalog().settings().forbid_trace};
  for (const auto* b : groups["link"]) load_link(model, *b, trace_options, options.warnings);
  return model;
}

Model load_corpus(const std::string& path, const LoadOptions& options) {
  return load_corpus_text(read_file(path), options);
}

namespace {

Block make_block(std::string kind, std::string id) {
  Block b;
  b.kind = std::move(kind);
  b.id = std::move(id);
  return b;
}

void write_expression(Block& b, const Model& model, const RequirementExpression& e) {
  if (!e.name.empty()) b.set("name", e.name);
  if (e.element_kind != ExpressionKind::Requirement) {
    b.set("element_kind", std::string(to_string(e.element_kind)));
  }
  if (!e.is_set() || !e.text.empty()) b.set("text", e.text);
  if (e.is_set()) b.set("members", text::join(*e.members, ", "));
  if (e.statement) {
    for (SlotKey k : kAllSlots) {
      const auto& slot = e.statement->slot(k);
      if (slot && slot->binding) b.set("bind." + std::string(to_string(k)), *slot->binding);
    }
  }
  if (!e.xmi_id.empty()) b.set("xmi_id", e.xmi_id);

  std::vector<std::string> keys;
  for (const auto& [k, v] : e.attributes) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), attribute_key_less);
  for (const auto& k : keys) {
    const AttributeDef* def = model.catalog().find_attribute(k);
    if (def && def->derived) continue;
    b.set(k, to_string(e.attributes.at(k)));
  }
}

}  // namespace

std::string serialize_corpus(const Model& model) {
  std::vector<Block> out;
  for (const auto& [id, el] : model.elements()) {
    Block b = make_block("element", id);
    b.set("name", el.name);
    b.set("kind", std::string(to_string(el.kind)));
    if (!el.xmi_id.empty()) b.set("xmi_id", el.xmi_id);
    out.push_back(std::move(b));
  }
  for (const auto& [id, t] : model.glossary().terms()) {
    Block b = make_block("term", id);
    if (!t.synonyms.empty()) b.set("synonyms", text::join(t.synonyms, ", "));
    if (!t.definition.empty()) b.set("definition", t.definition);
    if (!t.source.empty()) b.set("source", t.source);
    if (!t.allocations.empty()) {
      b.set("allocations",
            text::join(std::vector<std::string>(t.allocations.begin(), t.allocations.end()),
                       ", "));
    }
    out.push_back(std::move(b));
  }
  for (bool sets : {false, true}) {
    for (const auto& [id, e] : model.expressions()) {
      if (e.is_set() != sets) continue;
      Block b = make_block(sets ? "set" : "requirement", id);
      write_expression(b, model, e);
      out.push_back(std::move(b));
    }
  }
  for (const auto& [id, l] : model.links()) {
    Block b = make_block("link", id);
    b.set("kind", std::string(to_string(l.kind)));
    b.set("source", l.source_id);
    b.set("target", l.target_id);
    out.push_back(std::move(b));
  }
  return write_blocks(out);
}

void save_corpus(const Model& model, const std::string& path) {
  write_file(path, serialize_corpus(model));
}

}  // namespace mbsr
