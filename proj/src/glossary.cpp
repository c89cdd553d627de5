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

#include "mbsr/glossary.hpp"

#include <algorithm>
#include <cctype>

#include "mbsr/error.hpp"

namespace mbsr {

namespace {

// Byte trie over surface forms; node 0 is the root.
class SurfaceTrie {
 public:
  SurfaceTrie() : nodes_(1) {}

  void insert(std::string_view key, const std::string& canonical) {
    int n = 0;
    for (char c : key) {
      auto it = nodes_[n].next.find(c);
      if (it == nodes_[n].next.end()) {
        nodes_.emplace_back();
        int child = static_cast<int>(nodes_.size()) - 1;
        nodes_[n].next.emplace(c, child);
        n = child;
      } else {
        n = it->second;
      }
    }
    // First insertion wins so glossary entries take precedence over extras.
    if (nodes_[n].canonical.empty()) nodes_[n].canonical = canonical;
  }

  struct Match {
    std::size_t end = 0;
    const std::string* canonical = nullptr;
  };

  // Longest terminal reachable from `start` whose end sits on a boundary.
  Match longest(std::string_view text, std::size_t start, bool fold) const {
    Match best;
    int n = 0;
    for (std::size_t i = start; i < text.size(); ++i) {
      char c = text[i];
      if (fold) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      auto it = nodes_[n].next.find(c);
      if (it == nodes_[n].next.end()) break;
      n = it->second;
      if (!nodes_[n].canonical.empty()) {
        bool bounded = i + 1 == text.size() || !text::is_word_byte(text[i + 1]) ||
                       !text::is_word_byte(text[i]);
        if (bounded) best = {i + 1, &nodes_[n].canonical};
      }
    }
    return best;
  }

 private:
  struct Node {
    std::map<char, int> next;
    std::string canonical;
  };
  std::vector<Node> nodes_;
};

std::vector<TermSpan> scan(std::string_view text, const SurfaceTrie& trie,
                           bool fold) {
  std::vector<TermSpan> spans;
  std::size_t i = 0;
  while (i < text.size()) {
    bool at_boundary = i == 0 || !text::is_word_byte(text[i - 1]) ||
                       !text::is_word_byte(text[i]);
    if (at_boundary) {
      auto m = trie.longest(text, i, fold);
      if (m.canonical) {
        spans.push_back({{i, m.end}, *m.canonical});
        i = m.end;
        continue;
      }
    }
    ++i;
  }
  return spans;
}

bool looks_like_element_name(std::string_view token) {
  if (token.find('_') != std::string_view::npos) {
    // A lone "_" or "__" is punctuation, not a name.
    return std::any_of(token.begin(), token.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
  }
  for (std::size_t i = 1; i < token.size(); ++i) {
    auto prev = static_cast<unsigned char>(token[i - 1]);
    auto cur = static_cast<unsigned char>(token[i]);
    if (std::islower(prev) && std::isupper(cur)) return true;
  }
  return false;
}

std::string_view strip_leading_punct(std::string_view s) {
  while (!s.empty() && (s.front() == '(' || s.front() == '"' ||
                        s.front() == '\'' || s.front() == '[')) {
    s.remove_prefix(1);
  }
  return s;
}

}  // namespace

Glossary::Glossary(bool case_insensitive) : case_insensitive_(case_insensitive) {}

std::string Glossary::key(std::string_view surface) const {
  return case_insensitive_ ? text::to_lower(surface) : std::string(surface);
}

void Glossary::index(const std::string& surface, const std::string& canonical) {
  surfaces_[key(surface)] = canonical;
}

void Glossary::add(GlossaryTerm term) {
  if (text::trim(term.term).empty()) {
    throw Error(ErrorCode::InvalidName, "glossary term must be non-empty");
  }
  if (terms_.count(term.term) || surfaces_.count(key(term.term))) {
    throw Error(ErrorCode::DuplicateTerm, "term '" + term.term + "' already defined");
  }
  std::set<std::string> fresh{key(term.term)};
  for (const auto& s : term.synonyms) {
    if (text::trim(s).empty()) {
      throw Error(ErrorCode::InvalidName, "empty synonym for '" + term.term + "'");
    }
    if (surfaces_.count(key(s)) || !fresh.insert(key(s)).second) {
      throw Error(ErrorCode::SynonymCollision,
                  "synonym '" + s + "' of '" + term.term + "' collides");
    }
  }
  index(term.term, term.term);
  for (const auto& s : term.synonyms) index(s, term.term);
  std::string name = term.term;
  terms_.emplace(std::move(name), std::move(term));
}

void Glossary::add_synonym(const std::string& term, const std::string& synonym) {
  auto it = terms_.find(term);
  if (it == terms_.end()) {
    throw Error(ErrorCode::UnknownId, "no glossary term '" + term + "'");
  }
  if (text::trim(synonym).empty()) {
    throw Error(ErrorCode::InvalidName, "empty synonym for '" + term + "'");
  }
  if (surfaces_.count(key(synonym))) {
    throw Error(ErrorCode::SynonymCollision, "synonym '" + synonym + "' collides");
  }
  it->second.synonyms.push_back(synonym);
  index(synonym, term);
}

const GlossaryTerm* Glossary::find(std::string_view surface) const {
  auto it = surfaces_.find(key(surface));
  if (it == surfaces_.end()) return nullptr;
  return &terms_.at(it->second);
}

std::vector<TermSpan> Glossary::annotate(std::string_view text) const {
  return annotate(text, {});
}

std::vector<TermSpan> Glossary::annotate(std::string_view text,
                                         const std::set<std::string>& extra) const {
  SurfaceTrie trie;
  for (const auto& [surface, canonical] : surfaces_) trie.insert(surface, canonical);
  for (const auto& name : extra) {
    if (!name.empty()) trie.insert(key(name), name);
  }
  return scan(text, trie, case_insensitive_);
}

std::vector<std::string> find_undefined(std::string_view text,
                                        const Glossary& glossary,
                                        const std::set<std::string>& element_names) {
  auto covered = glossary.annotate(text, element_names);
  auto inside_covered = [&](Span s) {
    return std::any_of(covered.begin(), covered.end(), [&](const TermSpan& t) {
      return t.span.start <= s.start && s.end <= t.span.end;
    });
  };

  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& tok : text::whitespace_tokens(text)) {
    auto word = strip_leading_punct(tok.text);
    if (word.empty() || !looks_like_element_name(word)) continue;
    Span span{tok.word.end - word.size(), tok.word.end};
    std::string w(word);
    if (glossary.find(w) || element_names.count(w) || inside_covered(span)) continue;
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

std::map<std::string, std::size_t> term_usage(const std::vector<std::string>& texts,
                                              const Glossary& glossary) {
  std::map<std::string, std::size_t> counts;
  for (const auto& [term, _] : glossary.terms()) counts[term] = 0;
  for (const auto& t : texts) {
    for (const auto& span : glossary.annotate(t)) ++counts[span.term];
  }
  return counts;
}

}  // namespace mbsr
