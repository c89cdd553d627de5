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

#include <deque>
#include <random>

#include "doctest.h"
#include "mbsr/corpus.hpp"
#include "mbsr/error.hpp"
#include "mbsr/trace.hpp"
#include "support.hpp"

using namespace mbsr;
using namespace mbsr::test;

namespace {

using Strings = std::vector<std::string>;

Model derive_chain() { return load_corpus(source_path("tests/fixtures/derive_chain.mbsr")); }

/// Independent undirected adjacency: every link, set membership and slot
/// binding, built from the raw model contents.
std::map<std::string, std::set<std::string>> oracle_graph(const Model& m) {
  std::map<std::string, std::set<std::string>> g;
  auto edge = [&](const std::string& a, const std::string& b) {
    if (a == b) return;
    g[a].insert(b);
    g[b].insert(a);
  };
  for (const auto& [_, l] : m.links()) edge(l.source_id, l.target_id);
  for (const auto& [id, e] : m.expressions()) {
    if (e.members) {
      for (const auto& mem : *e.members) edge(id, mem);
    }
    if (e.statement) {
      for (const auto& s : e.statement->slots) {
        if (s && s->binding) edge(id, *s->binding);
      }
    }
  }
  return g;
}

std::map<std::string, int> oracle_bfs(const Model& m, const std::string& root, int depth) {
  auto g = oracle_graph(m);
  std::map<std::string, int> dist{{root, 0}};
  std::deque<std::string> q{root};
  while (!q.empty()) {
    auto cur = q.front();
    q.pop_front();
    if (dist[cur] == depth) continue;
    for (const auto& n : g[cur]) {
      if (dist.emplace(n, dist[cur] + 1).second) q.push_back(n);
    }
  }
  return dist;
}

void flatten(const RelationNode& n, int d, std::map<std::string, int>& out) {
  CHECK(out.emplace(n.id, d).second);  // each node appears once
  for (const auto& c : n.children) flatten(c, d + 1, out);
}

}  // namespace

TEST_CASE("relation map of the derive chain") {
  Model m = derive_chain();
  CHECK(format_relation_map(relation_map(m, "L1-A", 1)) ==
        "L1-A\n"
        "  [Derive] L2-A\n"
        "  [Derive] L2-B\n"
        "  [Refine] EL-Model\n");
  CHECK(format_relation_map(relation_map(m, "L1-A", 2)) ==
        "L1-A\n"
        "  [Derive] L2-A\n"
        "    [Derive] L3-A\n"
        "    [Derive] L3-B\n"
        "    [Binding] EL-Arm\n"
        "  [Derive] L2-B\n"
        "    [Derive] L3-C\n"
        "    [Verify] EL-Test\n"
        "  [Refine] EL-Model\n");
  CHECK(format_relation_map(relation_map(m, "L1-A", 0)) == "L1-A\n");
  CHECK(format_relation_map(relation_map(m, "L1-A", 3, {RelationKind::Refine})) ==
        "L1-A\n  [Refine] EL-Model\n");
  CHECK(error_of([&] { relation_map(m, "nope", 2); }) == ErrorCode::UnknownRoot);

  auto dot = relation_map_dot(relation_map(m, "L2-B", 1));
  CHECK(dot.find("\"L2-B\" -> \"L3-C\" [label=\"Derive\"];") != std::string::npos);
  CHECK(dot.rfind("digraph relation_map {\n", 0) == 0);
}

TEST_CASE("relation map agrees with a BFS oracle on every root and depth") {
  Model m = derive_chain();
  add_set(m, "S", {"L3-A", "L2-B"});
  Strings roots;
  for (const auto& [id, _] : m.expressions()) roots.push_back(id);
  for (const auto& [id, _] : m.elements()) roots.push_back(id);
  for (const auto& root : roots) {
    for (int d = 0; d <= 5; ++d) {
      CAPTURE(root);
      CAPTURE(d);
      std::map<std::string, int> got;
      flatten(relation_map(m, root, d), 0, got);
      CHECK(got == oracle_bfs(m, root, d));
    }
  }
}

TEST_CASE("relation map matches the oracle on random graphs") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    Model m;
    const int n = 4 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      add_req(m, "R" + std::to_string(i), "The Unit" + std::to_string(i) + " shall run.");
      add_el(m, "E" + std::to_string(i), "Part" + std::to_string(i));
    }
    for (int k = 0; k < 2 * n; ++k) {
      const LinkKind kind = kAllLinkKinds[rng() % 7];  // everything but Violate
      const bool from_el = rng() % 2;
      const std::string src = (from_el ? "E" : "R") + std::to_string(rng() % n);
      const std::string dst = "R" + std::to_string(rng() % n);
      try {
        add_link(m, kind, src, dst);
      } catch (const Error&) {
      }
    }
    for (int d = 0; d <= 4; ++d) {
      const std::string root = "R" + std::to_string(rng() % n);
      std::map<std::string, int> got;
      flatten(relation_map(m, root, d), 0, got);
      CHECK(got == oracle_bfs(m, root, d));
    }
  }
}

TEST_CASE("bidirectional trace closures") {
  Model m = derive_chain();
  auto l3a = bidirectional_trace(m, "L3-A");
  CHECK(l3a.upstream == Strings{"L1-A", "L2-A"});
  CHECK(l3a.downstream == Strings{"EL-Arm"});

  auto l1a = bidirectional_trace(m, "L1-A");
  CHECK(l1a.upstream.empty());
  CHECK(l1a.downstream ==
        Strings{"EL-Arm", "EL-Model", "EL-Test", "L2-A", "L2-B", "L3-A", "L3-B", "L3-C"});

  auto l2b = bidirectional_trace(m, "L2-B");
  CHECK(l2b.upstream == Strings{"L1-A"});
  CHECK(l2b.downstream == Strings{"EL-Test", "L3-C"});

  add_set(m, "LEVEL3", {"L3-A", "L3-B", "L3-C"});
  CHECK(bidirectional_trace(m, "L3-C").upstream == Strings{"L1-A", "L2-B", "LEVEL3"});
  CHECK(error_of([&] { bidirectional_trace(m, "EL-Arm"); }) == ErrorCode::UnknownId);
}

TEST_CASE("KDR view lists key and driving requirements with their derive chain") {
  Model m = derive_chain();
  auto kdr = kdr_view(m, "all");
  REQUIRE(kdr.size() == 3);
  CHECK(kdr[0] == KdrEntry{"L1-A", "K", {}});
  CHECK(kdr[1] == KdrEntry{"L2-A", "D", {"L1-A"}});
  CHECK(kdr[2] == KdrEntry{"L3-A", "K+D", {"L2-A", "L1-A"}});
}

TEST_CASE("link endpoint and structure constraints") {
  Model m = derive_chain();
  const Model before = m;
  CHECK(error_of([&] { add_link(m, LinkKind::Derive, "L1-A", "L3-A"); }) ==
        ErrorCode::CycleDetected);
  CHECK(error_of([&] { add_link(m, LinkKind::Derive, "L1-A", "L1-A"); }) ==
        ErrorCode::CycleDetected);
  CHECK(error_of([&] { add_link(m, LinkKind::Verify, "L2-A", "EL-Test"); }) ==
        ErrorCode::KindConstraintViolation);
  CHECK(error_of([&] { add_link(m, LinkKind::Derive, "EL-Arm", "L1-A"); }) ==
        ErrorCode::KindConstraintViolation);
  CHECK(error_of([&] { add_link(m, LinkKind::Satisfy, "EL-Ghost", "L1-A"); }) ==
        ErrorCode::UnknownEndpoint);
  CHECK(error_of([&] { add_link(m, LinkKind::Violate, "L1-A", "rule:R99"); }) ==
        ErrorCode::UnknownEndpoint);
  CHECK(error_of([&] { add_link(m, LinkKind::Trace, "L1-A", "L3-C", {true}); }) ==
        ErrorCode::TraceDiscouraged);
  CHECK(m == before);

  auto again = add_link(m, LinkKind::Derive, "L2-A", "L1-A");
  CHECK(again.link_id == "Derive:L2-A->L1-A");
  CHECK(m == before);

  auto trace = add_link(m, LinkKind::Trace, "L1-A", "L3-C");
  CHECK(trace.warnings.size() == 1);
  CHECK(m.find_link("Trace:L1-A->L3-C"));

  add_link(m, LinkKind::Containment, "L1-A", "L2-A");
  CHECK(error_of([&] { add_link(m, LinkKind::Containment, "L2-B", "L2-A"); }) ==
        ErrorCode::KindConstraintViolation);
  CHECK(error_of([&] { add_link(m, LinkKind::Containment, "L2-A", "L1-A"); }) ==
        ErrorCode::CycleDetected);
  CHECK(add_link(m, LinkKind::Satisfy, "L1-A", "characteristic:C3").link_id ==
        "Satisfy:L1-A->characteristic:C3");
}

TEST_CASE("copies are read-only and follow their original") {
  Model m;
  add_req(m, "ORIG", "The Pump shall start within 5 s.");
  add_req(m, "DUP", "placeholder");
  add_link(m, LinkKind::Copy, "ORIG", "DUP");
  CHECK(m.expression("DUP").text == "The Pump shall start within 5 s.");
  m.set_text("ORIG", "The Pump shall start within 2 s.");
  CHECK(m.expression("DUP").text == "The Pump shall start within 2 s.");
  CHECK(error_of([&] { m.set_text("DUP", "x"); }) == ErrorCode::CopyReadOnly);
  CHECK(error_of([&] { add_link(m, LinkKind::Copy, "DUP", "ORIG"); }) ==
        ErrorCode::CycleDetected);
}

TEST_CASE("scope dot lists in-scope links and dashed bindings") {
  Model m = derive_chain();
  auto dot = scope_dot(m, "all");
  CHECK(dot.rfind("digraph mbsr {\n", 0) == 0);
  CHECK(dot.find("\"EL-Arm\" [label=\"Sampling_Arm\"];") != std::string::npos);
  CHECK(dot.find("\"L2-A\" -> \"EL-Arm\" [label=\"SR2\", style=dashed];") !=
        std::string::npos);
  CHECK(dot.find("\"L3-A\" -> \"L2-A\" [label=\"Derive\"];") != std::string::npos);
}
