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

#include "mbsr/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mbsr/blockfile.hpp"
#include "mbsr/corpus.hpp"
#include "mbsr/error.hpp"
#include "mbsr/glossary.hpp"
#include "mbsr/metrics.hpp"
#include "mbsr/reqif.hpp"
#include "mbsr/report.hpp"
#include "mbsr/rules.hpp"
#include "mbsr/trace.hpp"
#include "mbsr/xmi.hpp"

namespace mbsr::cli {

namespace {

struct Options {
  std::string corpus;
  std::string scope{kScopeAll};
  std::string config;
  std::string format;
  std::string out;
  bool strict = false;
  std::string now;

  std::string id;
  int depth = 3;
  std::string history;
  std::string type = "Requirement";
  bool rule_counts = false;
  std::string rules;
  std::string columns;
  std::string mapping;
  std::string tmpl = "Overview";
  bool check = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--corpus", o.corpus, "Corpus file (.mbsr)")->required();
  sub->add_option("--scope", o.scope, "Set or expression id, or 'all'");
  sub->add_option("--config", o.config, "Catalog override file (falls back to MBSR_CONFIG)");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "md", "xmi", "reqif", "dot"}));
  sub->add_option("--out", o.out, "Write data output to this file");
  sub->add_flag("--strict", o.strict, "Treat discouraged Trace links as errors");
  sub->add_option("--now", o.now, "Clock value for metrics (YYYY-MM-DDTHH:MM:SSZ)");
}

Model load(const Options& o, std::ostream& err) {
  std::optional<std::string> config;
  if (!o.config.empty()) {
    config = o.config;
  } else if (const char* env = std::getenv("MBSR_CONFIG"); env && *env) {
    config = env;
  }
  Catalog catalog = load_catalog(config);
  if (o.strict) {
    catalog.apply_overrides("[settings]\nforbid_trace = true\n");
  }
  std::vector<std::string> warnings;
  LoadOptions lo{std::make_shared<const Catalog>(std::move(catalog)), &warnings};
  Model model = load_corpus(o.corpus, lo);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  if (!o.now.empty()) {
    auto t = text::parse_timestamp(o.now);
    if (!t) throw UsageError("--now expects YYYY-MM-DDTHH:MM:SSZ");
    Timestamp fixed = *t;
    model.set_clock([fixed] { return fixed; });
  }
  return model;
}

std::string excerpt(const RequirementExpression& e, const Evidence& ev) {
  std::string_view src = e.text;
  std::string holder;
  if (ev.field != "text") {
    auto it = e.attributes.find(ev.field);
    if (it == e.attributes.end()) return {};
    holder = to_string(it->second);
    src = holder;
  }
  if (ev.span.end > src.size() || ev.span.start > ev.span.end) return {};
  return std::string(src.substr(ev.span.start, ev.span.size()));
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int cmd_lint(const Options& o, std::ostream& out, std::ostream& err) {
  Model model = load(o, err);
  auto results = check_scope(model, o.scope);
  apply_verdicts(model, results);

  const bool csv = o.format == "csv";
  if (csv) out << "requirement,rule,verdict,field,start,end,excerpt,note\n";
  std::size_t violations = 0;
  std::set<std::string> requirements;
  std::string current;
  for (const auto& r : results) {
    requirements.insert(r.requirement_id);
    if (r.verdict == Verdict::Manual) continue;
    const auto& e = model.expression(r.requirement_id);
    if (!csv && r.requirement_id != current) {
      out << r.requirement_id << "\n";
      current = r.requirement_id;
    }
    if (r.verdict == Verdict::Satisfy) {
      if (csv) {
        out << csv_cell(r.requirement_id) << "," << r.rule_id << ",Satisfy,,,,,\n";
      } else {
        out << "  " << r.rule_id << " Satisfy\n";
      }
      continue;
    }
    for (const auto& ev : r.evidence) {
      ++violations;
      if (csv) {
        out << csv_cell(r.requirement_id) << "," << r.rule_id << ",Violate," << ev.field
            << "," << ev.span.start << "," << ev.span.end << ","
            << csv_cell(excerpt(e, ev)) << "," << csv_cell(ev.note) << "\n";
      } else {
        out << "  " << r.rule_id << " Violate " << ev.field << "[" << ev.span.start << ","
            << ev.span.end << ") \"" << excerpt(e, ev) << "\": " << ev.note << "\n";
      }
    }
  }
  err << requirements.size() << " requirement(s) checked, " << violations
      << " violation(s)\n";
  return violations ? kViolations : kClean;
}

int cmd_parse(const Options& o, std::ostream& out, std::ostream& err) {
  Model model = load(o, err);
  const auto& e = model.expression(o.id);
  auto index = model.element_index();
  ParseResult parsed = parse_statement(e.text, model.glossary(), model.catalog(), &index);
  if (e.statement) parsed.statement = e.statement;

  out << "id: " << e.id << "\n";
  out << "text: " << e.text << "\n";
  out << "pattern: "
      << (parsed.diagnostics.matched_pattern
              ? std::string(to_string(*parsed.diagnostics.matched_pattern))
              : std::string("none"))
      << "\n";
  if (parsed.statement) {
    for (SlotKey k : kAllSlots) {
      const auto& slot = parsed.statement->slot(k);
      out << slot_property_name(k) << ": ";
      if (slot && !slot->text.empty()) {
        out << slot->text;
        if (slot->binding) out << " -> " << *slot->binding;
      }
      out << "\n";
    }
  }
  out << "shall_count: " << parsed.diagnostics.shall_count << "\n";
  out << "issues:";
  if (parsed.issues.empty()) out << " none";
  for (const auto& i : parsed.issues) {
    out << " " << to_string(i.code);
    if (i.slot) out << "(" << to_string(*i.slot) << ")";
  }
  out << "\nunconsumed:";
  if (parsed.diagnostics.unconsumed.empty()) out << " none";
  for (const auto& s : parsed.diagnostics.unconsumed) {
    out << " \"" << std::string_view(e.text).substr(s.start, s.size()) << "\"";
  }
  out << "\n";
  return parsed.issues.empty() ? kClean : kViolations;
}

int cmd_metrics(const Options& o, std::ostream& out, std::ostream& err) {
  Model model = load(o, err);
  auto type = expression_kind_from_string(o.type);
  if (!type) throw UsageError("--type must be Requirement or Need");
  if (!o.history.empty() && std::filesystem::exists(o.history)) {
    for (auto& m : metrics_from_csv(read_file(o.history))) model.append_metric(std::move(m));
  }
  MetricInstance m = calculate(model, o.scope, *type);
  if (!o.history.empty()) write_file(o.history, metrics_to_csv(model.metric_history()));

  if (o.rule_counts) {
    apply_verdicts(model, check_scope(model, o.scope));
    out << "rule,satisfy,violate,manual\n";
    for (const auto& col : rule_columns(model.catalog())) {
      const auto& c = rule_metrics(model, o.scope).at(col);
      out << col << "," << c.satisfy << "," << c.violate << "," << c.manual << "\n";
    }
    return kClean;
  }
  if (o.format == "md") {
    out << "| timestamp | scope | type | total | SR1 | SR2 | SR3 | SR4 | SR5 | complete | pct "
           "|\n|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& h : o.history.empty() ? std::vector<MetricInstance>{m}
                                           : model.metric_history()) {
      std::string row = metric_csv_row(h);
      std::string md = "| ";
      for (char c : row) md += c == ',' ? std::string(" | ") : std::string(1, c);
      out << md << " |\n";
    }
  } else {
    out << metrics_to_csv(o.history.empty() ? std::vector<MetricInstance>{m}
                                            : model.metric_history());
  }
  return kClean;
}

int cmd_trace(const Options& o, std::ostream& out, std::ostream& err) {
  Model model = load(o, err);
  if (o.depth < 0) throw UsageError("--depth must be non-negative");
  RelationNode root = relation_map(model, o.id, o.depth);
  if (o.format == "dot") {
    out << relation_map_dot(root);
    return kClean;
  }
  out << format_relation_map(root);
  if (model.find_expression(o.id)) {
    auto bt = bidirectional_trace(model, o.id);
    out << "upstream: " << text::join(bt.upstream, ", ") << "\n";
    out << "downstream: " << text::join(bt.downstream, ", ") << "\n";
  }
  return kClean;
}

int cmd_matrix(const Options& o, std::ostream& out, std::ostream& err) {
  Model model = load(o, err);
  apply_verdicts(model, check_scope(model, o.scope));
  auto matrix = build_matrix(model, o.scope, text::split_list(o.rules));
  out << (o.format == "md" ? matrix.to_markdown() : matrix.to_csv());
  return kClean;
}

int cmd_export(const Options& o, std::ostream& out, std::ostream& err) {
  Model model = load(o, err);
  if (o.format.empty()) throw UsageError("export needs --format");
  if (o.format == "xmi") {
    out << export_xmi(model, o.scope);
  } else if (o.format == "reqif") {
    if (o.mapping.empty()) throw UsageError("--format reqif needs --mapping");
    out << export_reqif(model, o.scope, load_reqif_mapping(o.mapping));
  } else if (o.format == "dot") {
    out << scope_dot(model, o.scope);
  } else {
    apply_verdicts(model, check_scope(model, o.scope));
    if (o.format == "csv") {
      auto cols = o.columns.empty() ? default_table_columns() : text::split_list(o.columns);
      out << export_table(model, o.scope, cols);
    } else {
      auto tmpl = report_template_from_string(o.tmpl);
      if (!tmpl) throw UsageError("--template must be Overview or SetReview");
      out << generate_report(model, o.scope, *tmpl);
    }
  }
  return kClean;
}

int cmd_glossary(const Options& o, std::ostream& out, std::ostream& err) {
  Model model = load(o, err);
  if (!o.check) throw UsageError("glossary needs --check");
  auto names = model.element_names();
  std::size_t findings = 0;
  const bool csv = o.format == "csv";
  if (csv) out << "requirement,token\n";
  for (const auto& id : model.scope_expressions(o.scope)) {
    auto undefined = find_undefined(model.expression(id).text, model.glossary(), names);
    findings += undefined.size();
    if (undefined.empty()) continue;
    if (csv) {
      for (const auto& t : undefined) out << csv_cell(id) << "," << csv_cell(t) << "\n";
    } else {
      out << id << ": " << text::join(undefined, ", ") << "\n";
    }
  }
  err << findings << " undefined term(s)\n";
  return findings ? kViolations : kClean;
}

int cmd_validate(const Options& o, std::ostream&, std::ostream& err) {
  Model model = load(o, err);
  std::size_t sets = 0;
  for (const auto& [id, e] : model.expressions()) sets += e.is_set();
  err << "ok: " << model.elements().size() << " element(s), "
      << model.expressions().size() - sets << " expression(s), " << sets << " set(s), "
      << model.glossary().terms().size() << " term(s), " << model.links().size()
      << " link(s)\n";
  return kClean;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Model-based structured requirements toolkit", "mbsr"};
  app.require_subcommand(1);

  auto* lint = app.add_subcommand("lint", "Check requirements against the automated rules");
  auto* parse = app.add_subcommand("parse", "Show the slot decomposition of a requirement");
  parse->add_option("id", o.id, "Requirement id")->required();
  auto* metrics = app.add_subcommand("metrics", "Calculate completeness metrics");
  metrics->add_option("--history", o.history, "Metric table CSV to append to");
  metrics->add_option("--type", o.type, "Requirement or Need");
  metrics->add_flag("--rules", o.rule_counts, "Print rule satisfaction counts instead");
  auto* trace = app.add_subcommand("trace", "Relation map and bidirectional trace");
  trace->add_option("id", o.id, "Node id")->required();
  trace->add_option("--depth", o.depth, "Relation map depth");
  auto* matrix = app.add_subcommand("matrix", "Requirement x rule satisfaction matrix");
  matrix->add_option("--rules", o.rules, "Comma-separated rule columns");
  auto* exp = app.add_subcommand("export", "Export XMI, ReqIF, CSV tables or reports");
  exp->add_option("--columns", o.columns, "Comma-separated table columns");
  exp->add_option("--mapping", o.mapping, "ReqIF attribute mapping file");
  exp->add_option("--template", o.tmpl, "Overview or SetReview");
  auto* glossary = app.add_subcommand("glossary", "Glossary checks");
  glossary->add_flag("--check", o.check, "Report undefined terms");
  auto* validate = app.add_subcommand("validate", "Load and validate a corpus");

  for (auto* sub : {lint, parse, metrics, trace, matrix, exp, glossary, validate}) {
    add_common(sub, o);
  }

  std::vector<const char*> argv{"mbsr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kClean : kUsageError;
  }

  std::ostringstream data;
  int status = kClean;
  try {
    if (lint->parsed()) status = cmd_lint(o, data, err);
    else if (parse->parsed()) status = cmd_parse(o, data, err);
    else if (metrics->parsed()) status = cmd_metrics(o, data, err);
    else if (trace->parsed()) status = cmd_trace(o, data, err);
    else if (matrix->parsed()) status = cmd_matrix(o, data, err);
    else if (exp->parsed()) status = cmd_export(o, data, err);
    else if (glossary->parsed()) status = cmd_glossary(o, data, err);
    else status = cmd_validate(o, data, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code());
    if (e.cause()) err << " (" << to_string(*e.cause()) << ")";
    err << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    // I/O failures: unreadable corpus, config or output path.
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  if (o.out.empty()) {
    out << data.str();
  } else {
    try {
      write_file(o.out, data.str());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsageError;
    }
  }
  return status;
}

}  // namespace mbsr::cli
