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

// Reading and writing `.mbsr` corpus files.
//
//   [element E1]              name, kind, xmi_id
//   [term Spacecraft]         synonyms, definition, source, allocations
//   [requirement L3-EX.1]     name, element_kind, text, bind.SR1..bind.SR5,
//                             xmi_id, and one line per attribute key
//   [set S1]                  as requirement, plus members
//   [link Derive:A->B]        kind, source, target
//
// Blocks load in dependency order (elements, terms, requirements, sets,
// links) regardless of their order in the file.

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mbsr/model.hpp"

namespace mbsr {

struct LoadOptions {
  std::shared_ptr<const Catalog> catalog;  // defaults when null
  std::vector<std::string>* warnings = nullptr;
};

/// Throws SyntaxError for malformed files and ValidationError (with the
/// underlying code as cause) for content that breaks a model invariant.
Model load_corpus_text(std::string_view text, const LoadOptions& options = {});
Model load_corpus(const std::string& path, const LoadOptions& options = {});

/// Canonical form: block groups in load order, blocks sorted by id, keys in
/// a fixed order. Derived attributes (A15, A16) and metric history are not
/// written.
std::string serialize_corpus(const Model& model);
void save_corpus(const Model& model, const std::string& path);

}  // namespace mbsr
