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

#include "mbsr/report.hpp"

#include <algorithm>
#include <set>

#include "mbsr/error.hpp"
#include "mbsr/metrics.hpp"
#include "mbsr/rules.hpp"
#include "mbsr/trace.hpp"

namespace mbsr {

namespace {

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Keeps table cells on one line and their pipes literal.
std::string md_cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

enum class ColumnKind { Id, Name, Text, Slot, Attribute, Rule };

struct Column {
  std::string name;
  ColumnKind kind;
  SlotKey slot = SlotKey::SR1;
};

Column resolve_column(const Catalog& catalog, const std::string& name) {
  if (name == "id") return {name, ColumnKind::Id};
  if (name == "name") return {name, ColumnKind::Name};
  if (name == "text") return {name, ColumnKind::Text};
  if (auto slot = slot_from_string(name)) return {name, ColumnKind::Slot, *slot};
  if (catalog.find_attribute(name)) return {name, ColumnKind::Attribute};
  if (name == kTbxRuleId || catalog.find_rule(name)) return {name, ColumnKind::Rule};
  throw Error(ErrorCode::UnknownColumn, "unknown column '" + name + "'");
}

std::string cell(const Model& model, const RequirementExpression& e, const Column& c) {
  switch (c.kind) {
    case ColumnKind::Id: return e.id;
    case ColumnKind::Name: return e.name;
    case ColumnKind::Text: return e.text;
    case ColumnKind::Slot:
      return e.statement && e.statement->filled(c.slot) ? e.statement->slot(c.slot)->text
                                                        : std::string();
    case ColumnKind::Attribute: {
      auto v = model.get_attribute(e.id, c.name);
      return v ? to_string(*v) : std::string();
    }
    case ColumnKind::Rule:
      return std::string(1, verdict_letter(recorded_verdict(model, e.id, c.name)));
  }
  return {};
}

void metrics_section(const Model& model, std::string_view scope, std::string& out) {
  MetricInstance m = compute_metrics(model, scope);
  out += "## Completeness\n\n";
  out += "| metric | value |\n|---|---|\n";
  out += "| requirements | " + std::to_string(m.total) + " |\n";
  for (SlotKey k : kAllSlots) {
    out += "| " + std::string(slot_property_name(k)) + " filled | " +
           std::to_string(m.per_slot_filled[k]) + " |\n";
  }
  out += "| pattern complete | " + std::to_string(m.complete_count) + " |\n";
  out += "| completeness | " + format_pct(m.completeness_pct()) + "% |\n\n";
}

void kdr_section(const Model& model, std::string_view scope, std::string& out) {
  out += "## Key / Driving Requirements\n\n";
  auto kdr = kdr_view(model, scope);
  if (kdr.empty()) {
    out += "None.\n\n";
    return;
  }
  out += "| id | A38 | derived from |\n|---|---|---|\n";
  for (const auto& k : kdr) {
    out += "| " + md_cell(k.requirement_id) + " | " + md_cell(k.key_driving) + " | " +
           md_cell(text::join(k.derive_chain, " -> ")) + " |\n";
  }
  out += '\n';
}

std::vector<std::string> sets_in_scope(const Model& model, std::string_view scope) {
  std::vector<std::string> sets;
  if (scope == kScopeAll) {
    for (const auto& [id, e] : model.expressions()) {
      if (e.is_set()) sets.push_back(id);
    }
    return sets;
  }
  const auto& root = model.expression(scope);
  if (!root.is_set()) return sets;
  sets.push_back(root.id);
  for (const auto& m : model.transitive_members(root.id)) {
    if (model.expression(m).is_set()) sets.push_back(m);
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

}  // namespace

std::vector<std::string> default_table_columns() {
  return {"id", "name", "text", "SR1", "SR2", "SR3", "SR4", "SR5"};
}

std::string export_table(const Model& model, std::string_view scope,
                         const std::vector<std::string>& columns) {
  std::vector<Column> cols;
  for (const auto& c : columns) cols.push_back(resolve_column(model.catalog(), c));
  auto ids = model.scope_expressions(scope);

  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(cols[i].name);
  }
  out += '\n';
  for (const auto& id : ids) {
    const auto& e = model.expression(id);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ',';
      out += csv_cell(cell(model, e, cols[i]));
    }
    out += '\n';
  }
  return out;
}

std::optional<ReportTemplate> report_template_from_string(std::string_view s) {
  if (text::iequals(s, "Overview")) return ReportTemplate::Overview;
  if (text::iequals(s, "SetReview")) return ReportTemplate::SetReview;
  return std::nullopt;
}

std::string underline_terms(const Model& model, std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  for (const auto& t : model.glossary().annotate(text)) {
    out.append(text.substr(pos, t.span.start - pos));
    out += "<u>";
    out.append(text.substr(t.span.start, t.span.size()));
    out += "</u>";
    pos = t.span.end;
  }
  out.append(text.substr(pos));
  return out;
}

std::string generate_report(const Model& model, std::string_view scope,
                            ReportTemplate tmpl) {
  auto ids = model.scope_expressions(scope);
  std::string out;
  const std::string scope_name(scope);

  if (tmpl == ReportTemplate::Overview) {
    out += "# Overview: " + scope_name + "\n\n## Requirements\n\n";
    if (ids.empty()) out += "None.\n";
    for (const auto& id : ids) {
      const auto& e = model.expression(id);
      out += "- **" + md_cell(id) + "**";
      if (!e.name.empty()) out += " (" + md_cell(e.name) + ")";
      out += ": " + md_cell(underline_terms(model, e.text)) + "\n";
    }
    out += '\n';
    metrics_section(model, scope, out);
    kdr_section(model, scope, out);
    return out;
  }

  out += "# Set Review: " + scope_name + "\n\n";
  for (const auto& set_id : sets_in_scope(model, scope)) {
    const auto& set = model.expression(set_id);
    out += "## Set " + md_cell(set_id);
    if (!set.name.empty()) out += " (" + md_cell(set.name) + ")";
    out += "\n\n";
    if (set.members->empty()) out += "Empty.\n";
    for (const auto& m : *set.members) {
      const auto& e = model.expression(m);
      out += "- " + md_cell(m) + (e.is_set() ? " (set)" : ": " + md_cell(e.text)) + "\n";
    }
    out += '\n';
  }

  out += "## Satisfaction Matrix\n\n" + build_matrix(model, scope).to_markdown() + "\n";

  std::vector<TbxHit> hits;
  for (const auto& id : ids) {
    auto h = find_tbx(model.expression(id));
    hits.insert(hits.end(), h.begin(), h.end());
  }
  out += "## TBX Summary\n\nTBX matches: " + std::to_string(hits.size()) + "\n\n";
  if (!hits.empty()) {
    out += "| requirement | field | offset | token |\n|---|---|---|---|\n";
    for (const auto& h : hits) {
      out += "| " + md_cell(h.requirement_id) + " | " + md_cell(h.field) + " | " +
             std::to_string(h.span.start) + " | " + h.token + " |\n";
    }
    out += '\n';
  }
  return out;
}

}  // namespace mbsr
