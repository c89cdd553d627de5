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

// Pattern-slot decomposition of "shall" statements.
//
// Three patterns are recognised, tried in this order:
//
//   Iso2    [Condition], the [Subject] shall [Action] [Object] [Constraint].
//   Carson  The [Who] shall [What] [How Well] under [Condition].
//   Iso1    The [Subject] shall [Action] [Constraint].
//
// Detection is positional over whitespace tokens. A statement opening with a
// condition marker and carrying a comma before "shall" is Iso2; otherwise a
// trailing "under ..." clause makes it Carson; otherwise Iso1. The token
// right after "shall" is the action head. The constraint starts at the first
// constraint marker after the action (or after the object for Iso2). Marker
// lexicons come from the catalog.
//
// Known limitation: the condition ends at the first comma, so enumerations
// inside a condition are not supported.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mbsr/catalog.hpp"
#include "mbsr/glossary.hpp"
#include "mbsr/statement.hpp"
#include "mbsr/text.hpp"

namespace mbsr {

enum class ParseErrorCode { NoShallKeyword, MultipleShall, EmptySlot };
std::string_view to_string(ParseErrorCode c);

struct ParseIssue {
  ParseErrorCode code;
  std::optional<SlotKey> slot;  // set for EmptySlot

  bool operator==(const ParseIssue&) const = default;
};

struct ParseDiagnostics {
  std::optional<PatternId> matched_pattern;
  int shall_count = 0;
  std::vector<Span> unconsumed;
  std::map<SlotKey, Span> slot_spans;
  // Spans of fixed wording between slots: the condition comma, the subject
  // article, "shall", and the closing period.
  std::vector<Span> connective_spans;
  std::string action_head;
  std::vector<Span> shall_spans;

  bool operator==(const ParseDiagnostics&) const = default;
};

struct ParseResult {
  std::optional<StructuredStatement> statement;  // absent on NoShallKeyword
  ParseDiagnostics diagnostics;
  std::vector<ParseIssue> issues;

  bool has(ParseErrorCode c) const;
  std::vector<SlotKey> empty_slots() const;
  /// Parsed with a statement and no EmptySlot issue.
  bool slots_complete() const;

  bool operator==(const ParseResult&) const = default;
};

/// Model element names and ids used to bind slot fragments.
using ElementIndex = std::map<std::string, std::string>;  // name -> element id

ParseResult parse_statement(std::string_view text, const Glossary& glossary,
                            const Catalog& catalog,
                            const ElementIndex* elements = nullptr);

/// Binds each filled slot to a model element: an exact element name or
/// glossary surface first, then the leftmost-longest name inside the
/// fragment. Glossary terms resolve to an element of the same name or to
/// their first allocation. Existing bindings are replaced.
void bind_slots(StructuredStatement& statement, const Glossary& glossary,
                const ElementIndex& elements);

/// Derived text. Throws Error(MissingMandatorySlot).
std::string render_statement(const StructuredStatement& statement);

}  // namespace mbsr
