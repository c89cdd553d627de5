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

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mbsr/text.hpp"

namespace mbsr {

struct GlossaryTerm {
  std::string term;
  std::vector<std::string> synonyms;  // often acronyms
  std::string definition;
  std::string source;  // URI of the definition source
  std::set<std::string> allocations;  // element ids

  bool operator==(const GlossaryTerm&) const = default;
};

struct TermSpan {
  Span span;
  std::string term;  // canonical term, also for synonym hits

  bool operator==(const TermSpan&) const = default;
};

/// Defined terms and their surface forms. Matching is case-sensitive unless
/// constructed otherwise.
class Glossary {
 public:
  explicit Glossary(bool case_insensitive = false);

  /// Throws DuplicateTerm or SynonymCollision; the glossary is unchanged on
  /// error.
  void add(GlossaryTerm term);
  void add_synonym(const std::string& term, const std::string& synonym);

  /// Canonical entry for a term or synonym.
  const GlossaryTerm* find(std::string_view surface) const;
  const std::map<std::string, GlossaryTerm>& terms() const { return terms_; }
  bool case_insensitive() const { return case_insensitive_; }
  bool empty() const { return terms_.empty(); }

  /// Longest-match, word-bounded, non-overlapping spans, left to right.
  std::vector<TermSpan> annotate(std::string_view text) const;

  /// Same, with `extra` names matched alongside the glossary as their own
  /// canonical forms. Used to spot model element names in slot text.
  std::vector<TermSpan> annotate(std::string_view text,
                                 const std::set<std::string>& extra) const;

  bool operator==(const Glossary& o) const {
    return case_insensitive_ == o.case_insensitive_ && terms_ == o.terms_;
  }

 private:
  std::string key(std::string_view surface) const;
  void index(const std::string& surface, const std::string& canonical);

  bool case_insensitive_;
  std::map<std::string, GlossaryTerm> terms_;
  std::map<std::string, std::string> surfaces_;  // key(surface) -> canonical
};

/// Tokens that look like model element names (contain '_' or an inner
/// lower-to-upper case change) yet are neither glossary surfaces nor
/// `element_names`. First occurrence order, no duplicates.
std::vector<std::string> find_undefined(std::string_view text,
                                        const Glossary& glossary,
                                        const std::set<std::string>& element_names);

/// Occurrences of each canonical term across `texts`.
std::map<std::string, std::size_t> term_usage(const std::vector<std::string>& texts,
                                              const Glossary& glossary);

}  // namespace mbsr
