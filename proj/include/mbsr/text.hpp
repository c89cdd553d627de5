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

// Small string helpers shared by the parser, rule checkers and serializers.
// All offsets are byte offsets into UTF-8 text.

#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mbsr {

using Timestamp = std::chrono::sys_seconds;

/// Half-open byte range [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool operator==(const Span&) const = default;
  auto operator<=>(const Span&) const = default;
};

namespace text {

bool is_space(char c);

/// Word characters are ASCII alphanumerics, underscore, and any byte of a
/// multi-byte UTF-8 sequence.
bool is_word_byte(char c);

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

/// Collapses every whitespace run to a single space and trims both ends.
std::string normalize_whitespace(std::string_view s);

/// Comma-separated list; items are trimmed and empty items dropped.
std::vector<std::string> split_list(std::string_view s);
std::string join(const std::vector<std::string>& items, std::string_view sep);

/// A whitespace-delimited token. `word` is the token with trailing
/// punctuation stripped; underscored compounds stay whole.
struct Token {
  Span raw;
  Span word;
  std::string_view text;  // view of the word span
};

std::vector<Token> whitespace_tokens(std::string_view s);

/// Maximal runs of word bytes. Used for word-bounded phrase search.
std::vector<Span> word_spans(std::string_view s);

/// Finds `phrase` as a word-aligned, case-insensitive token sequence. The
/// phrase is split on whitespace; returned spans run from the first word's
/// start to the last word's end.
std::vector<Span> find_phrase(std::string_view s, std::string_view phrase);

bool is_valid_identifier(std::string_view id);

std::string format_timestamp(Timestamp t);
std::optional<Timestamp> parse_timestamp(std::string_view s);

std::uint64_t fnv1a64(std::string_view s);

}  // namespace text
}  // namespace mbsr
