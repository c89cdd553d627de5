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

#include "mbsr/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "mbsr/error.hpp"

namespace mbsr {

namespace {

std::size_t parse_count(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line) + ": bad count '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view row) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto comma = row.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(row.substr(start));
      return out;
    }
    out.push_back(row.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

MetricInstance compute_metrics(const Model& model, std::string_view scope,
                               ExpressionKind type) {
  MetricInstance m;
  m.timestamp = model.now();
  m.scope_id = std::string(scope);
  m.type_filter = type;
  for (SlotKey k : kAllSlots) m.per_slot_filled[k] = 0;
  for (const auto& id : model.scope_expressions(scope)) {
    const auto& e = model.expression(id);
    if (e.element_kind != type) continue;
    ++m.total;
    if (!e.statement) continue;
    for (SlotKey k : kAllSlots) {
      if (e.statement->filled(k)) ++m.per_slot_filled[k];
    }
    if (e.statement->complete()) ++m.complete_count;
  }
  return m;
}

MetricInstance calculate(Model& model, std::string_view scope, ExpressionKind type) {
  MetricInstance m = compute_metrics(model, scope, type);
  model.append_metric(m);
  return m;
}

std::map<std::string, VerdictCounts> rule_metrics(const Model& model,
                                                  std::string_view scope) {
  std::map<std::string, VerdictCounts> out;
  auto columns = rule_columns(model.catalog());
  for (const auto& c : columns) out[c];
  for (const auto& id : model.scope_expressions(scope)) {
    if (model.expression(id).element_kind != ExpressionKind::Requirement) continue;
    for (const auto& c : columns) {
      auto& counts = out[c];
      switch (recorded_verdict(model, id, c)) {
        case Verdict::Satisfy: ++counts.satisfy; break;
        case Verdict::Violate: ++counts.violate; break;
        case Verdict::Manual: ++counts.manual; break;
      }
    }
  }
  return out;
}

std::vector<BurndownPoint> burndown(const Model& model, std::string_view scope) {
  std::vector<BurndownPoint> points;
  for (const auto& m : model.metric_history()) {
    if (m.scope_id == scope) points.push_back({m.timestamp, m.completeness_pct()});
  }
  if (points.empty()) {
    throw Error(ErrorCode::NoInstances,
                "no metric instances for scope '" + std::string(scope) + "'");
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const BurndownPoint& a, const BurndownPoint& b) {
                     return a.timestamp < b.timestamp;
                   });
  return points;
}

std::string format_pct(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", pct);
  return buf;
}

std::string metric_csv_row(const MetricInstance& m) {
  std::string row = text::format_timestamp(m.timestamp) + "," + m.scope_id + "," +
                    std::string(to_string(m.type_filter)) + "," + std::to_string(m.total);
  for (SlotKey k : kAllSlots) {
    auto it = m.per_slot_filled.find(k);
    row += "," + std::to_string(it == m.per_slot_filled.end() ? 0 : it->second);
  }
  row += "," + std::to_string(m.complete_count) + "," + format_pct(m.completeness_pct());
  return row;
}

std::string metrics_to_csv(const std::vector<MetricInstance>& history) {
  std::string out(kMetricCsvHeader);
  out += '\n';
  for (const auto& m : history) out += metric_csv_row(m) + '\n';
  return out;
}

std::vector<MetricInstance> metrics_from_csv(std::string_view csv) {
  std::vector<MetricInstance> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < csv.size()) {
    auto nl = csv.find('\n', pos);
    std::string_view line =
        csv.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? csv.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!header_seen) {
      if (line != kMetricCsvHeader) {
        throw Error(ErrorCode::SyntaxError, where + "expected metric table header");
      }
      header_seen = true;
      continue;
    }
    auto f = split_fields(line);
    if (f.size() != 11) {
      throw Error(ErrorCode::SyntaxError, where + "expected 11 fields");
    }
    MetricInstance m;
    auto ts = text::parse_timestamp(f[0]);
    if (!ts) throw Error(ErrorCode::SyntaxError, where + "bad timestamp");
    m.timestamp = *ts;
    m.scope_id = std::string(f[1]);
    auto type = expression_kind_from_string(f[2]);
    if (!type) throw Error(ErrorCode::SyntaxError, where + "bad type");
    m.type_filter = *type;
    m.total = parse_count(f[3], line_no);
    for (std::size_t i = 0; i < 5; ++i) {
      m.per_slot_filled[kAllSlots[i]] = parse_count(f[4 + i], line_no);
    }
    m.complete_count = parse_count(f[9], line_no);
    bool consistent = m.complete_count <= m.total;
    for (const auto& [k, v] : m.per_slot_filled) consistent = consistent && v <= m.total;
    if (!consistent) {
      throw Error(ErrorCode::ValidationError, where + "counts exceed total");
    }
    if (format_pct(m.completeness_pct()) != f[10]) {
      throw Error(ErrorCode::ValidationError, where + "pct does not match counts");
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace mbsr
