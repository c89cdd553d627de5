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

#include "mbsr/rules.hpp"

#include <algorithm>

#include "mbsr/error.hpp"
#include "mbsr/parser.hpp"
#include "mbsr/trace.hpp"

namespace mbsr {

namespace {

constexpr std::string_view kPassiveAux[] = {"be", "is", "are", "was", "were", "been"};
constexpr std::size_t kParticipleWindow = 3;

using Checker = std::vector<Evidence> (*)(const RequirementExpression&, const RuleDef&,
                                          const Catalog&, const Glossary&);

Span whole(std::string_view s) { return {0, s.size()}; }

std::vector<Evidence> check_structured(const RequirementExpression& req, const RuleDef&,
                                       const Catalog& catalog, const Glossary& glossary) {
  auto parsed = parse_statement(req.text, glossary, catalog);
  std::vector<Evidence> ev;
  if (parsed.has(ParseErrorCode::NoShallKeyword)) {
    ev.push_back({"text", whole(req.text), "no 'shall' keyword"});
    return ev;
  }
  const auto& shalls = parsed.diagnostics.shall_spans;
  for (std::size_t i = 1; i < shalls.size(); ++i) {
    ev.push_back({"text", shalls[i], "additional 'shall' (statement is not singular)"});
  }
  for (SlotKey k : parsed.empty_slots()) {
    ev.push_back({"text", whole(req.text),
                  std::string(to_string(k)) + " is empty for the " +
                      std::string(to_string(*parsed.diagnostics.matched_pattern)) +
                      " pattern"});
  }
  return ev;
}

std::vector<Evidence> check_active_voice(const RequirementExpression& req,
                                         const RuleDef& rule, const Catalog&,
                                         const Glossary&) {
  const auto& s = req.text;
  auto spans = text::word_spans(s);
  std::vector<std::string> words;
  for (const auto& w : spans) words.push_back(text::to_lower(std::string_view(s).substr(w.start, w.size())));

  auto is_participle = [&](const std::string& w) {
    if (w.size() > 3 && w.compare(w.size() - 2, 2, "ed") == 0) return true;
    return std::any_of(rule.phrases.begin(), rule.phrases.end(),
                       [&](const std::string& p) { return text::iequals(p, w); });
  };

  std::vector<Evidence> ev;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (std::find(std::begin(kPassiveAux), std::end(kPassiveAux), words[i]) ==
        std::end(kPassiveAux)) {
      continue;
    }
    for (std::size_t j = i + 1; j <= i + kParticipleWindow && j + 1 < words.size(); ++j) {
      if (is_participle(words[j]) && words[j + 1] == "by") {
        ev.push_back({"text", {spans[i].start, spans[j + 1].end}, "passive construction"});
        i = j + 1;
        break;
      }
    }
  }
  return ev;
}

std::vector<Evidence> check_superfluous(const RequirementExpression& req,
                                        const RuleDef& rule, const Catalog&,
                                        const Glossary&) {
  std::vector<Evidence> ev;
  for (const auto& phrase : rule.phrases) {
    for (const auto& span : text::find_phrase(req.text, phrase)) {
      ev.push_back({"text", span, "superfluous '" + phrase + "'"});
    }
  }
  std::sort(ev.begin(), ev.end(),
            [](const Evidence& a, const Evidence& b) { return a.span < b.span; });
  return ev;
}

std::vector<Evidence> check_shall_not(const RequirementExpression& req, const RuleDef&,
                                      const Catalog&, const Glossary&) {
  std::vector<Evidence> ev;
  for (const auto& span : text::find_phrase(req.text, "shall not")) {
    ev.push_back({"text", span, "'shall not' is forbidden"});
  }
  return ev;
}

Checker checker_for(std::string_view rule_id) {
  if (rule_id == "R1") return &check_structured;
  if (rule_id == "R2") return &check_active_voice;
  if (rule_id == "R10") return &check_superfluous;
  if (rule_id == "R16") return &check_shall_not;
  return nullptr;
}

void tbx_scan(std::string_view s, const std::string& req_id, const std::string& field,
              std::vector<TbxHit>& out) {
  for (std::size_t i = 0; i + 3 <= s.size(); ++i) {
    if (s[i] != 'T' || s[i + 1] != 'B') continue;
    char c = s[i + 2];
    if (c == 'C' || c == 'D' || c == 'R' || c == 'N') {
      out.push_back({req_id, field, {i, i + 3}, std::string(s.substr(i, 3))});
    }
  }
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfy: return "Satisfy";
    case Verdict::Violate: return "Violate";
    case Verdict::Manual: return "Manual";
  }
  return "Manual";
}

char verdict_letter(Verdict v) {
  switch (v) {
    case Verdict::Satisfy: return 'S';
    case Verdict::Violate: return 'V';
    case Verdict::Manual: return 'M';
  }
  return 'M';
}

std::vector<std::string> rule_columns(const Catalog& catalog) {
  std::vector<std::string> cols;
  for (const auto& r : catalog.rules()) cols.push_back(r.rule_id);
  cols.emplace_back(kTbxRuleId);
  return cols;
}

std::vector<TbxHit> find_tbx(const RequirementExpression& req) {
  std::vector<TbxHit> hits;
  tbx_scan(req.text, req.id, "text", hits);
  for (const auto& [key, value] : req.attributes) {
    if (const auto* t = std::get_if<FreeText>(&value)) tbx_scan(t->text, req.id, key, hits);
  }
  return hits;
}

std::vector<RuleResult> check_requirement(const RequirementExpression& req,
                                          const Catalog& catalog,
                                          const Glossary& glossary) {
  std::vector<RuleResult> results;
  for (const auto& rule : catalog.rules()) {
    RuleResult r{req.id, rule.rule_id, Verdict::Manual, {}};
    Checker check = checker_for(rule.rule_id);
    if (check && rule.automation == Automation::Automated) {
      r.evidence = check(req, rule, catalog, glossary);
      r.verdict = r.evidence.empty() ? Verdict::Satisfy : Verdict::Violate;
    }
    results.push_back(std::move(r));
  }
  RuleResult tbx{req.id, std::string(kTbxRuleId), Verdict::Satisfy, {}};
  for (const auto& hit : find_tbx(req)) {
    tbx.evidence.push_back({hit.field, hit.span, "unresolved " + hit.token});
  }
  if (!tbx.evidence.empty()) tbx.verdict = Verdict::Violate;
  results.push_back(std::move(tbx));
  return results;
}

std::vector<RuleResult> check_scope(const Model& model, std::string_view scope) {
  std::vector<RuleResult> all;
  for (const auto& id : model.scope_expressions(scope)) {
    const auto& e = model.expression(id);
    if (e.element_kind != ExpressionKind::Requirement) continue;
    auto rs = check_requirement(e, model.catalog(), model.glossary());
    all.insert(all.end(), std::make_move_iterator(rs.begin()),
               std::make_move_iterator(rs.end()));
  }
  return all;
}

void apply_verdicts(Model& model, const std::vector<RuleResult>& results) {
  const Catalog& catalog = model.catalog();
  for (const auto& r : results) {
    if (!model.find_expression(r.requirement_id)) {
      throw Error(ErrorCode::UnknownId, "no requirement '" + r.requirement_id + "'");
    }
    if (!model.node_type(rule_node(r.rule_id))) {
      throw Error(ErrorCode::UnknownId, "no rule '" + r.rule_id + "'");
    }
  }

  std::map<std::string, std::vector<const RuleResult*>> by_req;
  for (const auto& r : results) {
    by_req[r.requirement_id].push_back(&r);
    const std::string node = rule_node(r.rule_id);
    for (const auto* l : model.links_from(r.requirement_id)) {
      if (l->target_id == node &&
          (l->kind == LinkKind::Satisfy || l->kind == LinkKind::Violate)) {
        model.remove_link(std::string(l->link_id));
      }
    }
    if (r.verdict == Verdict::Manual) continue;
    LinkKind kind = r.verdict == Verdict::Satisfy ? LinkKind::Satisfy : LinkKind::Violate;
    model.insert_link({make_link_id(kind, r.requirement_id, node), kind, r.requirement_id, node});
  }

  for (const auto& [req, rs] : by_req) {
    for (const auto& ch : catalog.characteristics()) {
      bool any = false;
      bool all_satisfied = true;
      for (const auto* r : rs) {
        if (r->verdict == Verdict::Manual) continue;
        const RuleDef* def = catalog.find_rule(r->rule_id);
        if (!def) continue;
        const auto& to = def->contributes_to;
        if (std::find(to.begin(), to.end(), ch.characteristic_id) == to.end()) continue;
        any = true;
        all_satisfied = all_satisfied && r->verdict == Verdict::Satisfy;
      }
      if (!any) continue;
      const std::string node = characteristic_node(ch.characteristic_id);
      const std::string id = make_link_id(LinkKind::Satisfy, req, node);
      model.remove_link(id);
      if (all_satisfied) model.insert_link({id, LinkKind::Satisfy, req, node});
    }
  }
}

Verdict recorded_verdict(const Model& model, const std::string& requirement_id,
                         const std::string& rule_id) {
  const std::string node = rule_node(rule_id);
  Verdict v = Verdict::Manual;
  for (const auto* l : model.links_from(requirement_id)) {
    if (l->target_id != node) continue;
    if (l->kind == LinkKind::Violate) return Verdict::Violate;
    if (l->kind == LinkKind::Satisfy) v = Verdict::Satisfy;
  }
  return v;
}

SatisfactionMatrix build_matrix(const Model& model, std::string_view scope,
                                const std::vector<std::string>& rule_filter) {
  SatisfactionMatrix m;
  for (const auto& id : model.scope_expressions(scope)) {
    if (model.expression(id).element_kind == ExpressionKind::Requirement) m.rows.push_back(id);
  }
  m.columns = rule_filter.empty() ? rule_columns(model.catalog()) : rule_filter;
  for (const auto& c : m.columns) {
    if (c != kTbxRuleId && !model.catalog().find_rule(c)) {
      throw Error(ErrorCode::UnknownColumn, "unknown rule column '" + c + "'");
    }
  }
  for (const auto& row : m.rows) {
    std::vector<Verdict> cells;
    for (const auto& col : m.columns) cells.push_back(recorded_verdict(model, row, col));
    m.cells.push_back(std::move(cells));
  }
  return m;
}

std::string SatisfactionMatrix::to_csv() const {
  std::string out = "id";
  for (const auto& c : columns) out += "," + csv_cell(c);
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += csv_cell(rows[r]);
    for (Verdict v : cells[r]) {
      out += ',';
      out += verdict_letter(v);
    }
    out += '\n';
  }
  return out;
}

std::string SatisfactionMatrix::to_markdown() const {
  std::string out = "| id |";
  for (const auto& c : columns) out += " " + c + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += "---|";
  out += '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out += "| " + rows[r] + " |";
    for (Verdict v : cells[r]) {
      out += v == Verdict::Violate ? " !V |" : std::string(" ") + verdict_letter(v) + " |";
    }
    out += '\n';
  }
  return out;
}

}  // namespace mbsr
