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

// Minimal ReqIF export. Attribute keys must be mapped to ReqIF attribute
// definition names by hand; slot bindings are flattened to their text.
//
// Mapping file:
//
//   [reqif mapping]
//   A01 = Rationale
//   text = ReqIF.Text
//   SR2 = Subject
//
// Besides attribute keys, `text` and `SR1`..`SR5` may be mapped; they are
// exported only when mapped.

#pragma once

#include <map>
#include <string>
#include <string_view>

#include "mbsr/model.hpp"

namespace mbsr {

using ReqifMapping = std::map<std::string, std::string>;  // key -> definition name

ReqifMapping parse_reqif_mapping(std::string_view text);
ReqifMapping load_reqif_mapping(const std::string& path);

/// Spec objects for every expression in scope (sets included); the spec
/// hierarchy mirrors set nesting. Throws MappingMissing for a populated
/// attribute without a mapping, and UnknownScope.
std::string export_reqif(const Model& model, std::string_view scope,
                         const ReqifMapping& mapping);

}  // namespace mbsr
