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

#include "mbsr/blockfile.hpp"

#include <fstream>
#include <sstream>

#include "mbsr/error.hpp"
#include "mbsr/text.hpp"

namespace mbsr {

namespace {

constexpr std::string_view kFenceOpen = "<<<";
constexpr std::string_view kFenceClose = ">>>";

[[noreturn]] void syntax_error(int line, const std::string& what) {
  throw Error(ErrorCode::SyntaxError,
              "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

bool needs_fence(std::string_view value) {
  if (value.find('\n') != std::string_view::npos) return true;
  if (value.empty()) return false;
  return text::is_space(value.front()) || text::is_space(value.back()) ||
         value == kFenceOpen;
}

}  // namespace

std::optional<std::string> Block::get(std::string_view key) const {
  if (const auto* e = find(key)) return e->value;
  return std::nullopt;
}

const BlockEntry* Block::find(std::string_view key) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (it->key == key) return &*it;
  }
  return nullptr;
}

void Block::set(std::string key, std::string value) {
  for (auto& e : entries) {
    if (e.key == key) {
      e.value = std::move(value);
      return;
    }
  }
  entries.push_back({std::move(key), std::move(value), 0});
}

std::vector<Block> parse_blocks(std::string_view input) {
  std::vector<Block> blocks;
  auto lines = split_lines(input);
  bool in_block = false;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int lineno = static_cast<int>(i) + 1;
    auto line = text::trim(lines[i]);
    if (line.empty()) {
      in_block = false;
      continue;
    }
    if (line.front() == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') syntax_error(lineno, "unterminated block header");
      auto inner = text::trim(line.substr(1, line.size() - 2));
      if (inner.empty()) syntax_error(lineno, "empty block header");
      Block b;
      auto space = inner.find_first_of(" \t");
      b.kind = std::string(inner.substr(0, space));
      if (space != std::string_view::npos) {
        b.id = std::string(text::trim(inner.substr(space)));
      }
      b.line = lineno;
      blocks.push_back(std::move(b));
      in_block = true;
      continue;
    }

    if (!in_block) syntax_error(lineno, "entry outside of a block");
    auto eq = line.find('=');
    if (eq == std::string_view::npos) syntax_error(lineno, "expected 'key = value'");
    auto key = text::trim(line.substr(0, eq));
    auto value = text::trim(line.substr(eq + 1));
    if (key.empty()) syntax_error(lineno, "empty key");
    for (char c : key) {
      if (text::is_space(c)) syntax_error(lineno, "whitespace in key");
    }

    BlockEntry entry{std::string(key), std::string(value), lineno};
    if (value == kFenceOpen) {
      std::string body;
      bool closed = false;
      bool first = true;
      for (++i; i < lines.size(); ++i) {
        if (lines[i] == kFenceClose) {
          closed = true;
          break;
        }
        if (!first) body += '\n';
        body += lines[i];
        first = false;
      }
      if (!closed) syntax_error(lineno, "unterminated '<<<' value");
      entry.value = std::move(body);
    }
    blocks.back().entries.push_back(std::move(entry));
  }
  return blocks;
}

std::string write_blocks(const std::vector<Block>& blocks) {
  std::string out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Block& block = blocks[b];
    if (b) out += '\n';
    out += '[';
    out += block.kind;
    if (!block.id.empty()) {
      out += ' ';
      out += block.id;
    }
    out += "]\n";
    for (const auto& e : block.entries) {
      out += e.key;
      if (needs_fence(e.value)) {
        for (auto l : split_lines(e.value)) {
          if (l == kFenceClose) {
            throw Error(ErrorCode::SyntaxError,
                        "value of '" + e.key + "' contains a '>>>' line");
          }
        }
        out += " = <<<\n";
        out += e.value;
        out += "\n>>>\n";
      } else if (e.value.empty()) {
        out += " =\n";
      } else {
        out += " = ";
        out += e.value;
        out += '\n';
      }
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace mbsr
