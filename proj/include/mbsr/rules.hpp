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

// Automated rule checks, verdict links and the satisfaction matrix.
//
// Checkers are string heuristics and deliberately small:
//   R1   the statement parses with every mandatory slot and a single "shall"
//   R2   passive voice: be/is/are/was/were/been, a participle within three
//        words, then "by"
//   R10  configured superfluous phrases ("be capable of", ...)
//   R16  "shall not"
//   TBX  TBD/TBC/TBR/TBN placeholders in the text or any free-text attribute
// Every other catalog rule reports Manual.

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mbsr/model.hpp"

namespace mbsr {

enum class Verdict { Satisfy, Violate, Manual };
std::string_view to_string(Verdict v);
char verdict_letter(Verdict v);  // 'S', 'V', 'M'

struct Evidence {
  std::string field = "text";  // "text" or an attribute key
  Span span;
  std::string note;

  bool operator==(const Evidence&) const = default;
};

struct RuleResult {
  std::string requirement_id;
  std::string rule_id;
  Verdict verdict = Verdict::Manual;
  std::vector<Evidence> evidence;

  bool operator==(const RuleResult&) const = default;
};

/// Catalog rules in id order followed by TBX.
std::vector<std::string> rule_columns(const Catalog& catalog);

/// One result per catalog rule plus TBX. Pure in (req, catalog, glossary).
std::vector<RuleResult> check_requirement(const RequirementExpression& req,
                                          const Catalog& catalog,
                                          const Glossary& glossary);

/// Checks every requirement in scope; results ordered by requirement id.
std::vector<RuleResult> check_scope(const Model& model, std::string_view scope);

/// Writes Satisfy/Violate links to rule nodes, replacing earlier verdicts
/// for the same (requirement, rule), and rolls automated verdicts up to
/// characteristic Satisfy links. Throws UnknownId.
void apply_verdicts(Model& model, const std::vector<RuleResult>& results);

struct SatisfactionMatrix {
  std::vector<std::string> rows;     // requirement ids
  std::vector<std::string> columns;  // rule ids
  std::vector<std::vector<Verdict>> cells;

  std::string to_csv() const;
  /// Violate cells are written as `!V`.
  std::string to_markdown() const;
};

/// Verdicts as recorded by links in the model; no link means Manual.
/// An empty rule filter selects every rule column. Throws UnknownScope.
SatisfactionMatrix build_matrix(const Model& model, std::string_view scope,
                                const std::vector<std::string>& rule_filter = {});

/// Verdict currently recorded in the model for (requirement, rule).
Verdict recorded_verdict(const Model& model, const std::string& requirement_id,
                         const std::string& rule_id);

struct VerdictCounts {
  std::size_t satisfy = 0;
  std::size_t violate = 0;
  std::size_t manual = 0;

  bool operator==(const VerdictCounts&) const = default;
};

/// Placeholder matches used by TBX and the review report.
struct TbxHit {
  std::string requirement_id;
  std::string field;
  Span span;
  std::string token;
};
std::vector<TbxHit> find_tbx(const RequirementExpression& req);

}  // namespace mbsr
