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

// Typed relationships between requirements, model elements, rules and
// characteristics.
//
// Endpoint rules per link kind (source -> target):
//
//   Containment  expression -> expression   container -> contained; forest
//   Derive       expression -> expression   derived -> source; acyclic
//   Copy         expression -> expression   original -> read-only copy
//   Satisfy      element -> expression, or expression -> rule/characteristic
//   Verify       element -> expression
//   Refine       element -> expression
//   Violate      expression -> rule
//   Trace        any -> any (allowed, reported as discouraged)

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mbsr/model.hpp"

namespace mbsr {

struct TraceOptions {
  bool forbid_trace = false;  // turn the Trace warning into an error
};

struct LinkOutcome {
  std::string link_id;
  std::vector<std::string> warnings;
};

/// Validates and stores a link. An identical (kind, source, target) link is
/// reused. Throws UnknownEndpoint, KindConstraintViolation, CycleDetected,
/// DuplicateId, or TraceDiscouraged when Trace links are forbidden.
LinkOutcome add_link(Model& model, LinkKind kind, const std::string& source,
                     const std::string& target, const TraceOptions& options = {},
                     std::string link_id = {});

/// Deterministic id for a generated link.
std::string make_link_id(LinkKind kind, std::string_view source, std::string_view target);

/// Relations followed by relation maps: every link kind plus set membership
/// and slot bindings.
enum class RelationKind {
  Containment, Derive, Refine, Satisfy, Verify, Copy, Trace, Violate,
  Membership, Binding,
};
std::string_view to_string(RelationKind k);
RelationKind relation_of(LinkKind k);

struct RelationNode {
  std::string id;
  RelationKind via = RelationKind::Trace;  // meaningless on the root
  std::vector<RelationNode> children;

  bool operator==(const RelationNode&) const = default;
};

/// Breadth-first expansion from `root_id`, links followed in both
/// directions. Each node appears once; children are ordered by relation
/// kind, then id. An empty filter follows every relation.
/// Throws UnknownRoot.
RelationNode relation_map(const Model& model, const std::string& root_id, int depth,
                          const std::set<RelationKind>& kind_filter = {});

/// Direct neighbours used by relation_map: (neighbour, relation) sorted by
/// relation then id, one entry per neighbour.
std::vector<std::pair<std::string, RelationKind>> neighbours(
    const Model& model, const std::string& node_id,
    const std::set<RelationKind>& kind_filter = {});

std::string format_relation_map(const RelationNode& root);
std::string relation_map_dot(const RelationNode& root);

struct KdrEntry {
  std::string requirement_id;
  std::string key_driving;  // A38 token
  std::vector<std::string> derive_chain;  // upward, nearest first

  bool operator==(const KdrEntry&) const = default;
};

/// Requirements in scope whose A38 is K, D or K+D, sorted by id.
std::vector<KdrEntry> kdr_view(const Model& model, std::string_view scope);

struct BidirectionalTrace {
  std::vector<std::string> upstream;
  std::vector<std::string> downstream;
};

/// Upstream: transitive Derive targets, containment parents and containing
/// sets. Downstream: transitive Derive sources plus Satisfy/Verify/Refine
/// sources into any of them. Both sorted by id. Throws UnknownId.
BidirectionalTrace bidirectional_trace(const Model& model, const std::string& req_id);

/// Whole-model DOT graph restricted to the scope's expressions and their
/// direct neighbours.
std::string scope_dot(const Model& model, std::string_view scope);

}  // namespace mbsr
