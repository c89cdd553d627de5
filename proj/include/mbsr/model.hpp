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

// The in-memory requirement model: model elements, requirement expressions
// and sets, the glossary, trace links and the metric history.
//
// Model is a value type. Mutations validate before touching state, so a
// throwing call leaves the model unchanged. A copy is a consistent snapshot
// that readers can use while the single writer keeps mutating the original.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mbsr/catalog.hpp"
#include "mbsr/glossary.hpp"
#include "mbsr/parser.hpp"
#include "mbsr/statement.hpp"
#include "mbsr/text.hpp"

namespace mbsr {

enum class ElementKind { Block, Mode, Quantity, Activity, Other };
std::string_view to_string(ElementKind k);
std::optional<ElementKind> element_kind_from_string(std::string_view s);

struct ModelElement {
  std::string element_id;
  std::string name;
  ElementKind kind = ElementKind::Other;
  std::string xmi_id;  // optional tool id preserved for XMI export

  bool operator==(const ModelElement&) const = default;
};

struct EnumToken {
  std::string token;
  bool operator==(const EnumToken&) const = default;
};
struct FreeText {
  std::string text;
  bool operator==(const FreeText&) const = default;
};
struct ElementRef {
  std::string element_id;
  bool operator==(const ElementRef&) const = default;
};

using AttributeValue = std::variant<EnumToken, FreeText, ElementRef, Timestamp>;

/// Plain rendering used by tables, XMI and the corpus writer.
std::string to_string(const AttributeValue& v);

enum class ExpressionKind { Requirement, Need };
std::string_view to_string(ExpressionKind k);
std::optional<ExpressionKind> expression_kind_from_string(std::string_view s);

/// A requirement (or need) statement with its attributes. A requirement set
/// is an expression whose `members` is engaged.
struct RequirementExpression {
  std::string id;
  std::string name;
  std::string text;
  std::optional<StructuredStatement> statement;
  std::map<std::string, AttributeValue> attributes;
  ExpressionKind element_kind = ExpressionKind::Requirement;
  std::optional<std::vector<std::string>> members;
  std::string xmi_id;

  bool is_set() const { return members.has_value(); }
  bool operator==(const RequirementExpression&) const = default;
};

enum class LinkKind { Containment, Derive, Refine, Satisfy, Verify, Copy, Trace, Violate };
inline constexpr LinkKind kAllLinkKinds[] = {
    LinkKind::Containment, LinkKind::Derive, LinkKind::Refine, LinkKind::Satisfy,
    LinkKind::Verify,      LinkKind::Copy,   LinkKind::Trace,  LinkKind::Violate};
std::string_view to_string(LinkKind k);
std::optional<LinkKind> link_kind_from_string(std::string_view s);

/// What a node id refers to. Rules and characteristics are addressed as
/// "rule:R16" and "characteristic:C3"; everything else by its bare id.
enum class NodeType { Expression, Element, Rule, Characteristic };

struct TraceLink {
  std::string link_id;
  LinkKind kind = LinkKind::Trace;
  std::string source_id;
  std::string target_id;

  bool operator==(const TraceLink&) const = default;
};

/// Timestamped completeness counts over a scope.
struct MetricInstance {
  Timestamp timestamp{};
  std::string scope_id;
  ExpressionKind type_filter = ExpressionKind::Requirement;
  std::size_t total = 0;
  std::map<SlotKey, std::size_t> per_slot_filled;
  std::size_t complete_count = 0;

  double completeness_pct() const {
    return total == 0 ? 0.0
                      : 100.0 * static_cast<double>(complete_count) /
                            static_cast<double>(total);
  }
  bool operator==(const MetricInstance&) const = default;
};

std::string rule_node(std::string_view rule_id);
std::string characteristic_node(std::string_view characteristic_id);

/// Scope keyword meaning every expression in the model.
inline constexpr std::string_view kScopeAll = "all";

class Model {
 public:
  using Clock = std::function<Timestamp()>;

  Model();
  explicit Model(std::shared_ptr<const Catalog> catalog);

  const Catalog& catalog() const { return *catalog_; }
  std::shared_ptr<const Catalog> catalog_ptr() const { return catalog_; }

  /// Clock used for A14 stamping and metric timestamps. Defaults to the
  /// system clock truncated to seconds.
  void set_clock(Clock clock) { clock_ = std::move(clock); }
  Timestamp now() const;

  // ---- elements -------------------------------------------------------
  void add_element(ModelElement element);
  const ModelElement* find_element(std::string_view id) const;
  const std::map<std::string, ModelElement>& elements() const { return elements_; }
  ElementIndex element_index() const;
  std::set<std::string> element_names() const;

  // ---- expressions ----------------------------------------------------
  /// Parses the text into a statement when none is supplied (requirements
  /// only; needs carry no pattern). Throws DuplicateId, InvalidId,
  /// InvalidAttributeToken, UnknownAttributeKey, UnknownElement.
  void add_expression(RequirementExpression expression);

  /// Adds a requirement set; throws UnknownMember or MembershipCycle.
  void add_set(RequirementExpression set);

  const RequirementExpression* find_expression(std::string_view id) const;
  const RequirementExpression& expression(std::string_view id) const;
  const std::map<std::string, RequirementExpression>& expressions() const {
    return expressions_;
  }

  /// Stored or derived (A15/A16) value; nullopt when unset.
  std::optional<AttributeValue> get_attribute(std::string_view id,
                                              std::string_view key) const;

  /// Validates and stores an attribute; stamps A14.
  void set_attribute(std::string_view id, std::string_view key, AttributeValue value);
  void set_attribute_text(std::string_view id, std::string_view key,
                          std::string_view value);

  /// Replaces the statement text, re-parses it, stamps A14 and propagates
  /// the text to every copy. Throws CopyReadOnly on a copy.
  void set_text(std::string_view id, std::string text);

  /// Parses a raw attribute string according to its AttributeDef.
  AttributeValue make_attribute_value(std::string_view key,
                                      std::string_view raw) const;

  /// Members of a set, depth-first, each exactly once; nested sets are
  /// listed before their own members.
  std::vector<std::string> transitive_members(std::string_view set_id) const;

  /// Non-set expressions in scope ("all" or a set id), sorted by id.
  /// Throws UnknownScope.
  std::vector<std::string> scope_expressions(std::string_view scope) const;

  /// Sets that list `id` directly as a member.
  std::vector<std::string> containing_sets(std::string_view id) const;

  // ---- glossary -------------------------------------------------------
  void add_term(GlossaryTerm term);
  const Glossary& glossary() const { return glossary_; }

  /// Re-binds the slots of every parsed statement against the current
  /// glossary and elements.
  void rebind_all();

  // ---- nodes and links (validation lives in trace.hpp) ----------------
  std::optional<NodeType> node_type(std::string_view node_id) const;
  const std::map<std::string, TraceLink>& links() const { return links_; }
  const TraceLink* find_link(std::string_view link_id) const;
  /// Unchecked insert; use add_link() from trace.hpp instead.
  void insert_link(TraceLink link);
  void remove_link(std::string_view link_id);
  std::vector<const TraceLink*> links_from(std::string_view source) const;
  std::vector<const TraceLink*> links_to(std::string_view target) const;
  /// Source of the Copy link targeting `id`, if `id` is a copy.
  std::optional<std::string> copy_source(std::string_view id) const;
  /// Pushes the text of `source_id` to all of its transitive copies.
  void propagate_copies(const std::string& source_id);

  // ---- metric history -------------------------------------------------
  void append_metric(MetricInstance m) { metrics_.push_back(std::move(m)); }
  const std::vector<MetricInstance>& metric_history() const { return metrics_; }

  // ---- XMI identity ---------------------------------------------------
  std::string model_uuid() const { return uuid_; }
  void set_model_uuid(std::string uuid) { uuid_ = std::move(uuid); }

  /// Content equality (catalog compared by value; clock ignored).
  friend bool operator==(const Model& a, const Model& b);

 private:
  void validate_expression(const RequirementExpression& e) const;
  void validate_attribute(const std::string& key, const AttributeValue& v) const;
  void stamp(RequirementExpression& e) const;
  void reparse(RequirementExpression& e) const;

  std::shared_ptr<const Catalog> catalog_;
  Clock clock_;
  std::string uuid_ = "mbsr-model";
  std::map<std::string, ModelElement> elements_;
  std::map<std::string, RequirementExpression> expressions_;
  Glossary glossary_;
  std::map<std::string, TraceLink> links_;
  std::vector<MetricInstance> metrics_;
};

}  // namespace mbsr
