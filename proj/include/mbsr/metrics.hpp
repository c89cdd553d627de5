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

// Completeness metrics, rule-satisfaction counts and the burndown history.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mbsr/model.hpp"
#include "mbsr/rules.hpp"

namespace mbsr {

/// Counts over the non-set expressions of `type` in scope, stamped with
/// model.now(). Does not touch the history. Throws UnknownScope.
MetricInstance compute_metrics(const Model& model, std::string_view scope,
                               ExpressionKind type = ExpressionKind::Requirement);

/// compute_metrics() followed by an append to the model's metric history.
MetricInstance calculate(Model& model, std::string_view scope,
                         ExpressionKind type = ExpressionKind::Requirement);

/// Recorded verdicts per rule column over the requirements in scope.
std::map<std::string, VerdictCounts> rule_metrics(const Model& model,
                                                  std::string_view scope);

struct BurndownPoint {
  Timestamp timestamp{};
  double completeness_pct = 0.0;

  bool operator==(const BurndownPoint&) const = default;
};

/// History entries for the scope in ascending timestamp order.
/// Throws NoInstances when the scope has never been calculated.
std::vector<BurndownPoint> burndown(const Model& model, std::string_view scope);

/// Percentage rendered with two decimals, as written to CSV.
std::string format_pct(double pct);

inline constexpr std::string_view kMetricCsvHeader =
    "timestamp,scope,type,total,sr1,sr2,sr3,sr4,sr5,complete,pct";

std::string metrics_to_csv(const std::vector<MetricInstance>& history);
std::string metric_csv_row(const MetricInstance& m);

/// Parses a metric table. Rows whose counts are inconsistent or whose pct
/// disagrees with the counts raise ValidationError; malformed rows raise
/// SyntaxError.
std::vector<MetricInstance> metrics_from_csv(std::string_view csv);

}  // namespace mbsr
