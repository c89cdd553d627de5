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

// Requirement tables (CSV) and Markdown stakeholder reports.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbsr/model.hpp"

namespace mbsr {

/// Columns used when none are requested.
std::vector<std::string> default_table_columns();

/// One row per non-set expression in scope. Columns: id, name, text,
/// SR1..SR5 (slot text), any attribute key, or a rule id (S/V/M as
/// recorded). Throws UnknownColumn, UnknownScope.
std::string export_table(const Model& model, std::string_view scope,
                         const std::vector<std::string>& columns);

enum class ReportTemplate { Overview, SetReview };
std::optional<ReportTemplate> report_template_from_string(std::string_view s);

/// Overview: requirement listing with defined terms underlined, completeness
/// metrics and the KDR view. SetReview: per-set listing, satisfaction matrix
/// and TBX summary. Reads recorded verdicts; never mutates the model.
std::string generate_report(const Model& model, std::string_view scope,
                            ReportTemplate tmpl);

/// Text with glossary terms wrapped in <u>..</u>.
std::string underline_terms(const Model& model, std::string_view text);

}  // namespace mbsr
