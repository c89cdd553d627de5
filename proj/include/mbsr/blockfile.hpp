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

// Reader and writer for the key-value block format shared by corpus files,
// catalog overrides and ReqIF mapping files:
//
//   # comment
//   [requirement L3-EX.1]
//   name = Sample collection
//   text = <<<
//   multi-line value
//   >>>
//
// A blank line ends a block. Comment lines are recognised only when `#` is
// the first non-blank character, so values may contain `#`.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mbsr {

struct BlockEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct Block {
  std::string kind;
  std::string id;
  int line = 0;
  std::vector<BlockEntry> entries;

  /// Last value for `key`, if any.
  std::optional<std::string> get(std::string_view key) const;
  const BlockEntry* find(std::string_view key) const;
  void set(std::string key, std::string value);
};

/// Throws Error(SyntaxError) carrying the offending line number.
std::vector<Block> parse_blocks(std::string_view text);

/// Canonical writer: entries in stored order, blocks separated by one blank
/// line, LF endings. Values with newlines or edge whitespace are fenced.
std::string write_blocks(const std::vector<Block>& blocks);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace mbsr
