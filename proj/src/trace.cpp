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

#include "mbsr/trace.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "mbsr/error.hpp"

namespace mbsr {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

// Is `to` reachable from `from` following links of `kind` source -> target?
bool reaches(const Model& model, LinkKind kind, const std::string& from,
             const std::string& to) {
  std::set<std::string> seen{from};
  std::deque<std::string> queue{from};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (cur == to) return true;
    for (const auto* l : model.links_from(cur)) {
      if (l->kind == kind && seen.insert(l->target_id).second) queue.push_back(l->target_id);
    }
  }
  return false;
}

bool endpoints_ok(LinkKind kind, NodeType src, NodeType dst) {
  using N = NodeType;
  switch (kind) {
    case LinkKind::Containment:
    case LinkKind::Derive:
    case LinkKind::Copy:
      return src == N::Expression && dst == N::Expression;
    case LinkKind::Satisfy:
      return (src == N::Element && dst == N::Expression) ||
             (src == N::Expression && (dst == N::Rule || dst == N::Characteristic));
    case LinkKind::Verify:
    case LinkKind::Refine:
      return src == N::Element && dst == N::Expression;
    case LinkKind::Violate:
      return src == N::Expression && dst == N::Rule;
    case LinkKind::Trace:
      return true;
  }
  return false;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void format_node(const RelationNode& node, int depth, bool root, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  if (!root) {
    out += '[';
    out += to_string(node.via);
    out += "] ";
  }
  out += node.id;
  out += '\n';
  for (const auto& c : node.children) format_node(c, depth + 1, false, out);
}

void dot_edges(const RelationNode& node, std::string& out) {
  for (const auto& c : node.children) {
    out += "  " + dot_quote(node.id) + " -> " + dot_quote(c.id) +
           " [label=" + dot_quote(to_string(c.via)) + "];\n";
    dot_edges(c, out);
  }
}

void dot_nodes(const RelationNode& node, std::set<std::string>& ids) {
  ids.insert(node.id);
  for (const auto& c : node.children) dot_nodes(c, ids);
}

}  // namespace

std::string make_link_id(LinkKind kind, std::string_view source, std::string_view target) {
  return std::string(to_string(kind)) + ":" + std::string(source) + "->" + std::string(target);
}

LinkOutcome add_link(Model& model, LinkKind kind, const std::string& source,
                     const std::string& target, const TraceOptions& options,
                     std::string link_id) {
  auto src = model.node_type(source);
  auto dst = model.node_type(target);
  if (!src) fail(ErrorCode::UnknownEndpoint, "unknown link source '" + source + "'");
  if (!dst) fail(ErrorCode::UnknownEndpoint, "unknown link target '" + target + "'");
  if (!endpoints_ok(kind, *src, *dst)) {
    fail(ErrorCode::KindConstraintViolation,
         std::string(to_string(kind)) + " cannot link '" + source + "' to '" + target + "'");
  }

  LinkOutcome outcome;
  for (const auto* l : model.links_from(source)) {
    if (l->kind == kind && l->target_id == target) {
      if (!link_id.empty() && link_id != l->link_id) {
        fail(ErrorCode::DuplicateId, "link '" + link_id + "' duplicates '" + l->link_id + "'");
      }
      outcome.link_id = l->link_id;
      return outcome;
    }
  }
  if (link_id.empty()) link_id = make_link_id(kind, source, target);
  if (model.find_link(link_id)) fail(ErrorCode::DuplicateId, "link id '" + link_id + "' in use");

  switch (kind) {
    case LinkKind::Containment:
      for (const auto* l : model.links_to(target)) {
        if (l->kind == LinkKind::Containment) {
          fail(ErrorCode::KindConstraintViolation,
               "'" + target + "' is already contained by '" + l->source_id + "'");
        }
      }
      [[fallthrough]];
    case LinkKind::Derive:
      if (source == target || reaches(model, kind, target, source)) {
        fail(ErrorCode::CycleDetected, std::string(to_string(kind)) + " link '" + source +
                                           "' -> '" + target + "' closes a cycle");
      }
      break;
    case LinkKind::Copy:
      if (source == target || reaches(model, kind, target, source)) {
        fail(ErrorCode::CycleDetected, "copy of '" + source + "' into '" + target +
                                           "' closes a cycle");
      }
      if (auto existing = model.copy_source(target)) {
        fail(ErrorCode::KindConstraintViolation,
             "'" + target + "' is already a copy of '" + *existing + "'");
      }
      break;
    case LinkKind::Trace:
      if (options.forbid_trace) {
        fail(ErrorCode::TraceDiscouraged, "Trace links are forbidden by configuration");
      }
      outcome.warnings.push_back("Trace link '" + source + "' -> '" + target +
                                 "' is discouraged; prefer a specific relationship");
      break;
    default:
      if (source == target) {
        fail(ErrorCode::KindConstraintViolation, "self link on '" + source + "'");
      }
      break;
  }

  model.insert_link({link_id, kind, source, target});
  if (kind == LinkKind::Copy) model.propagate_copies(source);
  outcome.link_id = link_id;
  return outcome;
}

std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Containment: return "Containment";
    case RelationKind::Derive: return "Derive";
    case RelationKind::Refine: return "Refine";
    case RelationKind::Satisfy: return "Satisfy";
    case RelationKind::Verify: return "Verify";
    case RelationKind::Copy: return "Copy";
    case RelationKind::Trace: return "Trace";
    case RelationKind::Violate: return "Violate";
    case RelationKind::Membership: return "Membership";
    case RelationKind::Binding: return "Binding";
  }
  return "?";
}

RelationKind relation_of(LinkKind k) {
  switch (k) {
    case LinkKind::Containment: return RelationKind::Containment;
    case LinkKind::Derive: return RelationKind::Derive;
    case LinkKind::Refine: return RelationKind::Refine;
    case LinkKind::Satisfy: return RelationKind::Satisfy;
    case LinkKind::Verify: return RelationKind::Verify;
    case LinkKind::Copy: return RelationKind::Copy;
    case LinkKind::Trace: return RelationKind::Trace;
    case LinkKind::Violate: return RelationKind::Violate;
  }
  return RelationKind::Trace;
}

std::vector<std::pair<std::string, RelationKind>> neighbours(
    const Model& model, const std::string& node_id,
    const std::set<RelationKind>& kind_filter) {
  std::map<std::string, RelationKind> best;
  auto offer = [&](const std::string& id, RelationKind rel) {
    if (id == node_id) return;
    if (!kind_filter.empty() && !kind_filter.count(rel)) return;
    auto [it, inserted] = best.emplace(id, rel);
    if (!inserted && rel < it->second) it->second = rel;
  };

  for (const auto& [_, l] : model.links()) {
    if (l.source_id == node_id) offer(l.target_id, relation_of(l.kind));
    if (l.target_id == node_id) offer(l.source_id, relation_of(l.kind));
  }
  if (const auto* e = model.find_expression(node_id)) {
    if (e->is_set()) {
      for (const auto& m : *e->members) offer(m, RelationKind::Membership);
    }
    for (const auto& s : model.containing_sets(node_id)) offer(s, RelationKind::Membership);
    if (e->statement) {
      for (const auto& slot : e->statement->slots) {
        if (slot && slot->binding) offer(*slot->binding, RelationKind::Binding);
      }
    }
  }
  if (model.find_element(node_id)) {
    for (const auto& [id, e] : model.expressions()) {
      if (!e.statement) continue;
      for (const auto& slot : e.statement->slots) {
        if (slot && slot->binding == node_id) offer(id, RelationKind::Binding);
      }
    }
  }

  std::vector<std::pair<std::string, RelationKind>> out(best.begin(), best.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  });
  return out;
}

RelationNode relation_map(const Model& model, const std::string& root_id, int depth,
                          const std::set<RelationKind>& kind_filter) {
  if (!model.node_type(root_id)) fail(ErrorCode::UnknownRoot, "unknown root '" + root_id + "'");
  RelationNode root{root_id, RelationKind::Trace, {}};
  std::set<std::string> visited{root_id};
  std::vector<RelationNode*> level{&root};
  for (int d = 0; d < depth && !level.empty(); ++d) {
    std::vector<RelationNode*> next;
    for (RelationNode* node : level) {
      for (auto& [id, rel] : neighbours(model, node->id, kind_filter)) {
        if (!visited.insert(id).second) continue;
        node->children.push_back({id, rel, {}});
      }
      // children is complete, so pointers into it stay valid.
      for (auto& c : node->children) next.push_back(&c);
    }
    level = std::move(next);
  }
  return root;
}

std::string format_relation_map(const RelationNode& root) {
  std::string out;
  format_node(root, 0, true, out);
  return out;
}

std::string relation_map_dot(const RelationNode& root) {
  std::set<std::string> ids;
  dot_nodes(root, ids);
  std::string out = "digraph relation_map {\n";
  for (const auto& id : ids) out += "  " + dot_quote(id) + ";\n";
  dot_edges(root, out);
  out += "}\n";
  return out;
}

std::vector<KdrEntry> kdr_view(const Model& model, std::string_view scope) {
  std::vector<KdrEntry> out;
  for (const auto& id : model.scope_expressions(scope)) {
    const auto& e = model.expression(id);
    auto it = e.attributes.find("A38");
    if (it == e.attributes.end()) continue;
    auto token = to_string(it->second);
    if (token != "K" && token != "D" && token != "K+D") continue;

    KdrEntry entry{id, token, {}};
    std::set<std::string> seen{id};
    std::vector<std::string> level{id};
    while (!level.empty()) {
      std::vector<std::string> next;
      for (const auto& cur : level) {
        for (const auto* l : model.links_from(cur)) {
          if (l->kind == LinkKind::Derive && seen.insert(l->target_id).second) {
            next.push_back(l->target_id);
          }
        }
      }
      std::sort(next.begin(), next.end());
      entry.derive_chain.insert(entry.derive_chain.end(), next.begin(), next.end());
      level = std::move(next);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

BidirectionalTrace bidirectional_trace(const Model& model, const std::string& req_id) {
  if (!model.find_expression(req_id)) fail(ErrorCode::UnknownId, "no expression '" + req_id + "'");
  BidirectionalTrace trace;

  std::set<std::string> up{req_id};
  std::deque<std::string> queue{req_id};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    std::vector<std::string> next;
    for (const auto* l : model.links_from(cur)) {
      if (l->kind == LinkKind::Derive) next.push_back(l->target_id);
    }
    for (const auto* l : model.links_to(cur)) {
      if (l->kind == LinkKind::Containment) next.push_back(l->source_id);
    }
    for (auto& s : model.containing_sets(cur)) next.push_back(std::move(s));
    for (auto& n : next) {
      if (up.insert(n).second) queue.push_back(n);
    }
  }
  up.erase(req_id);
  trace.upstream.assign(up.begin(), up.end());

  std::set<std::string> chain{req_id};
  queue = {req_id};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (const auto* l : model.links_to(cur)) {
      if (l->kind == LinkKind::Derive && chain.insert(l->source_id).second) {
        queue.push_back(l->source_id);
      }
    }
  }
  std::set<std::string> down;
  for (const auto& id : chain) {
    if (id != req_id) down.insert(id);
    for (const auto* l : model.links_to(id)) {
      if (l->kind == LinkKind::Satisfy || l->kind == LinkKind::Verify ||
          l->kind == LinkKind::Refine) {
        down.insert(l->source_id);
      }
    }
  }
  down.erase(req_id);
  trace.downstream.assign(down.begin(), down.end());
  return trace;
}

std::string scope_dot(const Model& model, std::string_view scope) {
  auto ids = model.scope_expressions(scope);
  std::set<std::string> in_scope(ids.begin(), ids.end());
  std::set<std::string> nodes = in_scope;
  std::vector<std::string> edges;
  for (const auto& [_, l] : model.links()) {
    if (!in_scope.count(l.source_id) && !in_scope.count(l.target_id)) continue;
    nodes.insert(l.source_id);
    nodes.insert(l.target_id);
    edges.push_back("  " + dot_quote(l.source_id) + " -> " + dot_quote(l.target_id) +
                    " [label=" + dot_quote(to_string(l.kind)) + "];\n");
  }
  for (const auto& id : ids) {
    const auto& e = model.expression(id);
    if (!e.statement) continue;
    for (SlotKey k : kAllSlots) {
      const auto& slot = e.statement->slot(k);
      if (!slot || !slot->binding) continue;
      nodes.insert(*slot->binding);
      edges.push_back("  " + dot_quote(id) + " -> " + dot_quote(*slot->binding) +
                      " [label=" + dot_quote(to_string(k)) + ", style=dashed];\n");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::string out = "digraph mbsr {\n";
  for (const auto& n : nodes) {
    std::string label = n;
    if (const auto* el = model.find_element(n)) label = el->name;
    out += "  " + dot_quote(n) + " [label=" + dot_quote(label) + "];\n";
  }
  for (const auto& e : edges) out += e;
  out += "}\n";
  return out;
}

}  // namespace mbsr
