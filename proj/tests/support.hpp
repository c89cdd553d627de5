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

// Shared helpers for the unit and acceptance tests.

#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "mbsr/blockfile.hpp"
#include "mbsr/error.hpp"
#include "mbsr/model.hpp"

namespace mbsr::test {

inline std::string source_path(const std::string& rel) {
  return std::string(MBSR_SOURCE_DIR) + "/" + rel;
}

inline std::vector<Block> fixture_blocks(const std::string& rel) {
  return parse_blocks(read_file(source_path(rel)));
}

inline Timestamp at(int seconds) {
  return Timestamp{std::chrono::seconds{1'760'000'000 + seconds}};
}

/// Adds a requirement with the given text; returns its id.
inline std::string add_req(Model& m, const std::string& id, const std::string& text) {
  RequirementExpression e;
  e.id = id;
  e.text = text;
  m.add_expression(std::move(e));
  return id;
}

inline void add_el(Model& m, const std::string& id, const std::string& name,
                   ElementKind kind = ElementKind::Block) {
  m.add_element(ModelElement{id, name, kind, {}});
}

inline void add_set(Model& m, const std::string& id, std::vector<std::string> members) {
  RequirementExpression s;
  s.id = id;
  s.members = std::move(members);
  m.add_set(std::move(s));
}

/// Code of the mbsr::Error thrown by `fn`, or nullopt.
template <typename Fn>
std::optional<ErrorCode> error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

template <typename Fn>
std::optional<ErrorCode> cause_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.cause() ? e.cause() : std::optional<ErrorCode>(e.code());
  }
  return std::nullopt;
}

}  // namespace mbsr::test
