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

#include "mbsr/parser.hpp"

#include <algorithm>
#include <cctype>

#include "mbsr/error.hpp"

namespace mbsr {

namespace {

constexpr std::string_view kArticles[] = {"The", "the", "A", "An", "a", "an"};

struct Tok {
  Span raw;
  std::string_view word;
};

bool is_article(std::string_view w) {
  return std::find(std::begin(kArticles), std::end(kArticles), w) !=
         std::end(kArticles);
}

std::string_view strip_article(std::string_view frag) {
  auto sp = frag.find_first_of(" \t\r\n");
  if (sp != std::string_view::npos && is_article(frag.substr(0, sp))) {
    return text::trim(frag.substr(sp));
  }
  return frag;
}

// Whitespace tokens with the closing period removed from the last token.
std::vector<Tok> body_tokens(std::string_view s, std::optional<Span>& period) {
  auto trimmed_end = s.size();
  while (trimmed_end > 0 && text::is_space(s[trimmed_end - 1])) --trimmed_end;
  std::size_t body_end = trimmed_end;
  if (trimmed_end > 0 && s[trimmed_end - 1] == '.') {
    period = Span{trimmed_end - 1, trimmed_end};
    body_end = trimmed_end - 1;
  }
  std::vector<Tok> toks;
  for (const auto& t : text::whitespace_tokens(s)) {
    if (t.raw.start >= body_end) continue;
    Tok k;
    k.raw = {t.raw.start, std::min(t.raw.end, body_end)};
    k.word = s.substr(t.word.start, std::min(t.word.end, body_end) - t.word.start);
    toks.push_back(k);
  }
  return toks;
}

// Does `marker` (possibly several words) match the tokens starting at i?
bool marker_at(const std::vector<Tok>& toks, std::size_t i, std::size_t end,
               std::string_view marker) {
  std::size_t k = i;
  std::size_t pos = 0;
  while (pos < marker.size()) {
    while (pos < marker.size() && text::is_space(marker[pos])) ++pos;
    if (pos >= marker.size()) break;
    auto stop = pos;
    while (stop < marker.size() && !text::is_space(marker[stop])) ++stop;
    if (k >= end || !text::iequals(toks[k].word, marker.substr(pos, stop - pos))) {
      return false;
    }
    ++k;
    pos = stop;
  }
  return k > i;
}

std::optional<std::size_t> find_marker(const std::vector<Tok>& toks,
                                       std::size_t from, std::size_t end,
                                       const std::vector<std::string>& markers) {
  for (std::size_t i = from; i < end; ++i) {
    for (const auto& m : markers) {
      if (marker_at(toks, i, end, m)) return i;
    }
  }
  return std::nullopt;
}

Span cover(const std::vector<Tok>& toks, std::size_t first, std::size_t last_excl) {
  return {toks[first].raw.start, toks[last_excl - 1].raw.end};
}

std::vector<Span> uncovered_runs(std::string_view s, const std::vector<Span>& covered) {
  std::vector<bool> mark(s.size(), false);
  for (const auto& c : covered) {
    for (std::size_t i = c.start; i < c.end && i < s.size(); ++i) mark[i] = true;
  }
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (mark[i] || text::is_space(s[i])) {
      ++i;
      continue;
    }
    // A run spans whitespace between uncovered words and ends trimmed.
    std::size_t start = i;
    std::size_t end = i;
    while (i < s.size() && !mark[i]) {
      if (!text::is_space(s[i])) end = i + 1;
      ++i;
    }
    out.push_back({start, end});
  }
  return out;
}

std::optional<std::string> resolve_term(const GlossaryTerm& term,
                                        const ElementIndex& elements) {
  if (auto it = elements.find(term.term); it != elements.end()) return it->second;
  if (!term.allocations.empty()) return *term.allocations.begin();
  return std::nullopt;
}

std::optional<std::string> bind_fragment(std::string_view frag,
                                         const Glossary& glossary,
                                         const ElementIndex& elements,
                                         const std::set<std::string>& names) {
  auto whole = std::string(strip_article(text::trim(frag)));
  if (auto it = elements.find(whole); it != elements.end()) return it->second;
  if (const auto* term = glossary.find(whole)) {
    if (auto id = resolve_term(*term, elements)) return id;
  }
  for (const auto& span : glossary.annotate(frag, names)) {
    if (auto it = elements.find(span.term); it != elements.end()) return it->second;
    if (const auto* term = glossary.find(span.term)) {
      if (auto id = resolve_term(*term, elements)) return id;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ParseErrorCode c) {
  switch (c) {
    case ParseErrorCode::NoShallKeyword: return "NoShallKeyword";
    case ParseErrorCode::MultipleShall: return "MultipleShall";
    case ParseErrorCode::EmptySlot: return "EmptySlot";
  }
  return "?";
}

bool ParseResult::has(ParseErrorCode c) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ParseIssue& i) { return i.code == c; });
}

std::vector<SlotKey> ParseResult::empty_slots() const {
  std::vector<SlotKey> out;
  for (const auto& i : issues) {
    if (i.code == ParseErrorCode::EmptySlot && i.slot) out.push_back(*i.slot);
  }
  return out;
}

bool ParseResult::slots_complete() const {
  return statement.has_value() && !has(ParseErrorCode::EmptySlot);
}

ParseResult parse_statement(std::string_view s, const Glossary& glossary,
                            const Catalog& catalog, const ElementIndex* elements) {
  ParseResult result;
  auto& diag = result.diagnostics;

  std::optional<Span> period;
  const auto toks = body_tokens(s, period);
  const std::size_t n = toks.size();

  std::vector<std::size_t> shalls;
  for (std::size_t i = 0; i < n; ++i) {
    if (text::iequals(toks[i].word, "shall")) {
      shalls.push_back(i);
      auto start = toks[i].raw.start;
      diag.shall_spans.push_back({start, start + toks[i].word.size()});
    }
  }
  diag.shall_count = static_cast<int>(shalls.size());
  if (shalls.empty()) {
    result.issues.push_back({ParseErrorCode::NoShallKeyword, std::nullopt});
    diag.unconsumed = uncovered_runs(s, {});
    return result;
  }
  if (shalls.size() > 1) {
    result.issues.push_back({ParseErrorCode::MultipleShall, std::nullopt});
  }
  const std::size_t shall = shalls.front();
  diag.connective_spans.push_back(toks[shall].raw);
  if (period) diag.connective_spans.push_back(*period);

  StructuredStatement st;
  std::map<SlotKey, Span> spans;

  // Leading condition: marker first, clause up to the first comma before
  // "shall".
  std::size_t subject_begin = 0;
  bool iso2 = false;
  if (shall > 0 && find_marker(toks, 0, 1, catalog.condition_markers()) == 0u) {
    auto region = s.substr(0, toks[shall].raw.start);
    auto comma = region.find(',');
    if (comma != std::string_view::npos) {
      auto cond_end = comma;
      while (cond_end > 0 && text::is_space(s[cond_end - 1])) --cond_end;
      if (cond_end > toks[0].raw.start) {
        iso2 = true;
        spans[SlotKey::SR1] = {toks[0].raw.start, cond_end};
        diag.connective_spans.push_back({comma, comma + 1});
        subject_begin = shall;
        for (std::size_t i = 0; i < shall; ++i) {
          if (toks[i].raw.start > comma) {
            subject_begin = i;
            break;
          }
        }
      }
    }
  }

  if (subject_begin < shall && is_article(toks[subject_begin].word) &&
      toks[subject_begin].raw.size() == toks[subject_begin].word.size()) {
    diag.connective_spans.push_back(toks[subject_begin].raw);
    ++subject_begin;
  }
  if (subject_begin < shall) spans[SlotKey::SR2] = cover(toks, subject_begin, shall);

  const std::size_t action = shall + 1;
  std::size_t region_end = n;
  PatternId pattern = iso2 ? PatternId::Iso2 : PatternId::Iso1;

  if (!iso2) {
    // Trailing "under <condition>". "in under" is a constraint marker and a
    // following number reads as a bound ("under 5 kg"), not a condition.
    for (std::size_t u = n; u-- > action + 1;) {
      if (!text::iequals(toks[u].word, "under") || u + 1 >= n) continue;
      if (text::iequals(toks[u - 1].word, "in")) continue;
      if (std::isdigit(static_cast<unsigned char>(toks[u + 1].word.empty()
                                                      ? ' '
                                                      : toks[u + 1].word.front()))) {
        continue;
      }
      pattern = PatternId::Carson;
      diag.connective_spans.push_back(toks[u].raw);
      spans[SlotKey::SR1] = cover(toks, u + 1, n);
      region_end = u;
      break;
    }
  }
  diag.matched_pattern = pattern;

  if (action < region_end) {
    diag.action_head = std::string(toks[action].word);
    auto marker = find_marker(toks, action + 1, region_end,
                              catalog.constraint_markers(pattern));
    std::size_t verb_end = marker.value_or(region_end);
    if (pattern == PatternId::Iso2) {
      spans[SlotKey::SR3] = toks[action].raw;
      if (action + 1 < verb_end) spans[SlotKey::SR4] = cover(toks, action + 1, verb_end);
    } else {
      spans[SlotKey::SR3] = cover(toks, action, verb_end);
    }
    if (marker) spans[SlotKey::SR5] = cover(toks, *marker, region_end);
  }

  st.pattern = pattern;
  for (const auto& [key, span] : spans) {
    st.slot(key) = SlotValue{std::string(s.substr(span.start, span.size())), std::nullopt};
  }
  for (SlotKey k : mandatory_slots(pattern)) {
    if (!st.filled(k)) result.issues.push_back({ParseErrorCode::EmptySlot, k});
  }

  if (elements || !glossary.empty()) {
    static const ElementIndex kNoElements;
    bind_slots(st, glossary, elements ? *elements : kNoElements);
  }

  diag.slot_spans = spans;
  std::vector<Span> covered = diag.connective_spans;
  for (const auto& [_, span] : spans) covered.push_back(span);
  diag.unconsumed = uncovered_runs(s, covered);
  std::sort(diag.connective_spans.begin(), diag.connective_spans.end());
  result.statement = std::move(st);
  return result;
}

void bind_slots(StructuredStatement& statement, const Glossary& glossary,
                const ElementIndex& elements) {
  std::set<std::string> names;
  for (const auto& [name, _] : elements) names.insert(name);
  for (auto& slot : statement.slots) {
    if (!slot || slot->text.empty()) continue;
    slot->binding = bind_fragment(slot->text, glossary, elements, names);
  }
}

std::string render_statement(const StructuredStatement& st) {
  for (SlotKey k : mandatory_slots(st.pattern)) {
    if (!st.filled(k)) {
      throw Error(ErrorCode::MissingMandatorySlot,
                  std::string(to_string(st.pattern)) + " statement needs " +
                      std::string(to_string(k)));
    }
  }
  auto t = [&](SlotKey k) -> std::string {
    return st.filled(k) ? st.slot(k)->text : std::string();
  };
  std::string out;
  switch (st.pattern) {
    case PatternId::Iso2:
      out = t(SlotKey::SR1) + ", the " + t(SlotKey::SR2) + " shall " +
            t(SlotKey::SR3) + " " + t(SlotKey::SR4) + " " + t(SlotKey::SR5);
      break;
    case PatternId::Iso1:
      out = "The " + t(SlotKey::SR2) + " shall " + t(SlotKey::SR3) + " " +
            t(SlotKey::SR5);
      break;
    case PatternId::Carson:
      out = "The " + t(SlotKey::SR2) + " shall " + t(SlotKey::SR3) + " " +
            t(SlotKey::SR5) + " under " + t(SlotKey::SR1);
      break;
  }
  out = text::normalize_whitespace(out);
  while (!out.empty() && out.back() == '.') out.pop_back();
  out += '.';
  return out;
}

}  // namespace mbsr
