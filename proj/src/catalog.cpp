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

#include "mbsr/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mbsr/blockfile.hpp"
#include "mbsr/error.hpp"
#include "mbsr/text.hpp"

namespace mbsr {

namespace {

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, what);
}

[[noreturn]] void parse_error(const Block& b, const std::string& what) {
  throw Error(ErrorCode::CatalogParseError,
              "line " + std::to_string(b.line) + ": [" + b.kind + " " + b.id +
                  "]: " + what);
}

std::string numbered(char prefix, int n, int width) {
  std::string digits = std::to_string(n);
  while (static_cast<int>(digits.size()) < width) digits.insert(0, "0");
  return std::string(1, prefix) + digits;
}

const std::vector<std::string> kConditionMarkers = {
    "While", "When", "If", "During", "Where", "Upon", "Under"};

const std::vector<std::string> kConstraintMarkers = {
    "with",        "within",      "in less than", "in under",
    "at least",    "at most",     "no more than", "no less than",
    "between",     "to within",   "every",        "per"};

std::vector<RuleDef> default_rules() {
  std::vector<RuleDef> rules;
  for (int n = 1; n <= static_cast<int>(kRuleCount); ++n) {
    RuleDef r;
    r.rule_id = "R" + std::to_string(n);
    r.name = "GtWR Rule " + r.rule_id;
    r.description = "Defined in the INCOSE Guide to Writing Requirements; "
                    "supply organization text via a catalog override.";
    r.automation = Automation::Manual;
    rules.push_back(std::move(r));
  }
  auto& r1 = rules[0];
  r1.name = "Structured Statement";
  r1.description = "The statement follows an agreed requirement pattern.";
  r1.automation = Automation::Automated;
  r1.contributes_to = {"C3", "C4", "C5", "C7", "C9"};

  auto& r2 = rules[1];
  r2.name = "Active Voice";
  r2.description = "The subject performs the action; no passive constructions.";
  r2.automation = Automation::Automated;
  r2.contributes_to = {"C3"};
  r2.phrases = {"done", "made", "given", "taken", "sent", "held",
                "kept", "set",  "put",   "built", "shown"};

  auto& r10 = rules[9];
  r10.name = "Superfluous Verbiage";
  r10.description = "Avoid padding such as 'be capable of' around the action.";
  r10.automation = Automation::Automated;
  r10.contributes_to = {"C3"};
  r10.phrases = {"be capable of", "be able to"};

  auto& r16 = rules[15];
  r16.name = "No Shall Not";
  r16.description = "State what the subject shall do; 'shall not' is forbidden.";
  r16.automation = Automation::Automated;
  r16.contributes_to = {"C3"};
  return rules;
}

std::vector<CharacteristicDef> default_characteristics() {
  using A = Applicability;
  using D = Derivation;
  constexpr auto F = D::FormalTransformation;
  constexpr auto O = D::AgreedToObligation;
  return {
      {"C1", "Necessary", A::Individual, F, true, true},
      {"C2", "Appropriate", A::Individual, F, true, true},
      {"C3", "Unambiguous", A::Individual, O, true, true},
      {"C4", "Complete", A::Individual, O, true, true},
      {"C5", "Singular", A::Individual, F, true, true},
      {"C6", "Feasible", A::Individual, O, true, true},
      {"C7", "Verifiable", A::Individual, O, true, true},
      {"C8", "Correct", A::Individual, F, true, true},
      {"C9", "Conforming", A::Individual, F, true, true},
      {"C10", "Complete", A::Set, F, true, true},
      {"C11", "Consistent", A::Set, F, true, true},
      {"C12", "Feasible", A::Set, O, true, true},
      {"C13", "Comprehensible", A::Set, O, true, true},
      {"C14", "Able to be validated", A::Set, O, true, true},
      {"C15", "Correct", A::Set, F, true, false},
  };
}

std::vector<AttributeDef> default_attributes() {
  std::vector<AttributeDef> attrs;
  for (int n = 1; n <= static_cast<int>(kAttributeCount); ++n) {
    AttributeDef a;
    a.attribute_key = numbered('A', n, 2);
    a.name = "Attribute " + a.attribute_key;
    a.group = "Unassigned";
    attrs.push_back(std::move(a));
  }
  auto at = [&](int n) -> AttributeDef& { return attrs[n - 1]; };
  auto set = [&](int n, std::string name, bool minimum, ValueKind kind,
                 std::vector<std::string> values = {}) {
    auto& a = at(n);
    a.name = std::move(name);
    a.minimum_set = minimum;
    a.value_kind = kind;
    a.value_set = std::move(values);
  };
  set(1, "Rationale Statement", true, ValueKind::Text);
  set(8, "System V&V Primary Method", true, ValueKind::Enum,
      {"Test", "Analysis", "Inspection", "Demonstration"});
  set(10, "System V&V Level", false, ValueKind::Text);
  set(14, "Date of Last Change", false, ValueKind::Timestamp);
  set(15, "Unique Identifier", true, ValueKind::Text);
  set(16, "Unique Name", true, ValueKind::Text);
  set(28, "Need or Requirement Verification Status", true, ValueKind::Enum,
      {"NotStarted", "InProgress", "Complete"});
  set(30, "Status of the Need or Requirement", false, ValueKind::Enum,
      {"Draft", "Reviewed", "Approved", "Baselined"});
  set(34, "Priority", true, ValueKind::Enum, {"High", "Medium", "Low"});
  set(38, "Key / Driving", false, ValueKind::Enum, {"K", "D", "K+D", "None"});
  set(40, "Type", true, ValueKind::Text);
  at(15).derived = true;
  at(16).derived = true;
  return attrs;
}

std::vector<PatternDef> default_patterns() {
  PatternDef iso1{PatternId::Iso1,
                  {SlotKey::SR2, SlotKey::SR3, SlotKey::SR5},
                  {{SlotKey::SR3, {"shall"}}, {SlotKey::SR5, kConstraintMarkers}}};
  PatternDef iso2{PatternId::Iso2,
                  {SlotKey::SR1, SlotKey::SR2, SlotKey::SR3, SlotKey::SR4,
                   SlotKey::SR5},
                  {{SlotKey::SR1, kConditionMarkers},
                   {SlotKey::SR3, {"shall"}},
                   {SlotKey::SR5, kConstraintMarkers}}};
  PatternDef carson{PatternId::Carson,
                    {SlotKey::SR2, SlotKey::SR3, SlotKey::SR5, SlotKey::SR1},
                    {{SlotKey::SR1, {"under"}},
                     {SlotKey::SR3, {"shall"}},
                     {SlotKey::SR5, kConstraintMarkers}}};
  return {iso1, iso2, carson};
}

bool parse_bool(const Block& b, const BlockEntry& e) {
  auto v = text::to_lower(e.value);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  parse_error(b, "'" + e.key + "' expects true/false, got '" + e.value + "'");
}

template <typename Enum, std::size_t N>
Enum parse_enum(const Block& b, const BlockEntry& e,
                const std::array<Enum, N>& values) {
  for (Enum v : values) {
    if (to_string(v) == e.value) return v;
  }
  parse_error(b, "bad value '" + e.value + "' for '" + e.key + "'");
}

const std::vector<SlotKey>& expected_slot_order(PatternId p) {
  static const std::vector<SlotKey> iso1{SlotKey::SR2, SlotKey::SR3, SlotKey::SR5};
  static const std::vector<SlotKey> iso2{SlotKey::SR1, SlotKey::SR2, SlotKey::SR3,
                                         SlotKey::SR4, SlotKey::SR5};
  static const std::vector<SlotKey> carson{SlotKey::SR2, SlotKey::SR3,
                                           SlotKey::SR5, SlotKey::SR1};
  switch (p) {
    case PatternId::Iso1: return iso1;
    case PatternId::Iso2: return iso2;
    case PatternId::Carson: return carson;
  }
  return iso1;
}

}  // namespace

std::string_view to_string(Automation a) {
  return a == Automation::Automated ? "Automated" : "Manual";
}
std::string_view to_string(Applicability a) {
  return a == Applicability::Individual ? "Individual" : "Set";
}
std::string_view to_string(Derivation d) {
  return d == Derivation::FormalTransformation ? "FormalTransformation"
                                               : "AgreedToObligation";
}
std::string_view to_string(ValueKind v) {
  switch (v) {
    case ValueKind::Enum: return "Enum";
    case ValueKind::Text: return "Text";
    case ValueKind::ElementRef: return "ElementRef";
    case ValueKind::Timestamp: return "Timestamp";
  }
  return "?";
}

bool has_checker(std::string_view rule_id) {
  return std::find(std::begin(kCheckedRules), std::end(kCheckedRules),
                   rule_id) != std::end(kCheckedRules);
}

bool is_attribute_key_syntax(std::string_view key) {
  if (key.size() < 2) return false;
  auto all_digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) != 0;
    });
  };
  if (key.front() == 'A') return key.size() == 3 && all_digits(key.substr(1));
  if (key.front() == 'X') return text::is_valid_identifier(key.substr(1));
  return false;
}

bool attribute_key_less(std::string_view a, std::string_view b) { return a < b; }

std::string AttributeDef::export_name() const {
  std::string display = name + (minimum_set ? "*" : "");
  std::string out = attribute_key + "_";
  for (char c : display) {
    bool alnum = std::isalnum(static_cast<unsigned char>(c)) &&
                 static_cast<unsigned char>(c) < 0x80;
    out.push_back(alnum ? c : '_');
  }
  return out;
}

Catalog Catalog::defaults() {
  Catalog c;
  c.rules_ = default_rules();
  c.characteristics_ = default_characteristics();
  c.attributes_ = default_attributes();
  c.patterns_ = default_patterns();
  return c;
}

const RuleDef* Catalog::find_rule(std::string_view id) const {
  for (const auto& r : rules_) {
    if (r.rule_id == id) return &r;
  }
  return nullptr;
}

const CharacteristicDef* Catalog::find_characteristic(std::string_view id) const {
  for (const auto& c : characteristics_) {
    if (c.characteristic_id == id) return &c;
  }
  return nullptr;
}

const AttributeDef* Catalog::find_attribute(std::string_view key) const {
  for (const auto& a : attributes_) {
    if (a.attribute_key == key) return &a;
  }
  return nullptr;
}

const PatternDef& Catalog::pattern(PatternId id) const {
  for (const auto& p : patterns_) {
    if (p.pattern_id == id) return p;
  }
  throw Error(ErrorCode::InvariantViolation,
              "pattern " + std::string(to_string(id)) + " missing");
}

std::vector<CharacteristicDef> Catalog::characteristics_for(Applicability a) const {
  std::vector<CharacteristicDef> out;
  for (const auto& c : characteristics_) {
    if (c.applicability == a) out.push_back(c);
  }
  return out;
}

const std::vector<std::string>& Catalog::condition_markers() const {
  static const std::vector<std::string> none;
  const auto& words = pattern(PatternId::Iso2).connective_words;
  auto it = words.find(SlotKey::SR1);
  return it == words.end() ? none : it->second;
}

const std::vector<std::string>& Catalog::constraint_markers(PatternId p) const {
  static const std::vector<std::string> none;
  const auto& words = pattern(p).connective_words;
  auto it = words.find(SlotKey::SR5);
  return it == words.end() ? none : it->second;
}

void Catalog::apply_overrides(std::string_view config_text) {
  std::vector<Block> blocks;
  try {
    blocks = parse_blocks(config_text);
  } catch (const Error& e) {
    throw Error(ErrorCode::CatalogParseError, e.what(), e.code());
  }

  Catalog next = *this;
  for (const Block& b : blocks) {
    if (b.kind == "rule") {
      auto it = std::find_if(next.rules_.begin(), next.rules_.end(),
                             [&](const RuleDef& r) { return r.rule_id == b.id; });
      if (it == next.rules_.end()) {
        violation("rule '" + b.id + "' is not one of R1..R42");
      }
      for (const auto& e : b.entries) {
        if (e.key == "name") it->name = e.value;
        else if (e.key == "description") it->description = e.value;
        else if (e.key == "automation")
          it->automation = parse_enum(
              b, e, std::array{Automation::Automated, Automation::Manual});
        else if (e.key == "enabled")
          it->automation = parse_bool(b, e) && has_checker(it->rule_id)
                               ? Automation::Automated
                               : Automation::Manual;
        else if (e.key == "contributes_to") it->contributes_to = text::split_list(e.value);
        else if (e.key == "phrases" || e.key == "participles")
          it->phrases = text::split_list(e.value);
        else parse_error(b, "unknown key '" + e.key + "'");
      }
    } else if (b.kind == "characteristic") {
      auto it = std::find_if(
          next.characteristics_.begin(), next.characteristics_.end(),
          [&](const CharacteristicDef& c) { return c.characteristic_id == b.id; });
      if (it == next.characteristics_.end()) {
        violation("characteristic '" + b.id + "' is not one of C1..C15");
      }
      for (const auto& e : b.entries) {
        if (e.key == "name") it->name = e.value;
        else if (e.key == "applicability")
          it->applicability = parse_enum(
              b, e, std::array{Applicability::Individual, Applicability::Set});
        else if (e.key == "derivation")
          it->derivation = parse_enum(
              b, e, std::array{Derivation::FormalTransformation,
                               Derivation::AgreedToObligation});
        else if (e.key == "nasa") it->nasa_mapped = parse_bool(b, e);
        else if (e.key == "iso") it->iso_mapped = parse_bool(b, e);
        else parse_error(b, "unknown key '" + e.key + "'");
      }
    } else if (b.kind == "attribute") {
      if (!is_attribute_key_syntax(b.id)) {
        parse_error(b, "attribute key must be A01..A49 or X<name>");
      }
      auto it = std::find_if(
          next.attributes_.begin(), next.attributes_.end(),
          [&](const AttributeDef& a) { return a.attribute_key == b.id; });
      if (it == next.attributes_.end()) {
        if (b.id.front() == 'A') violation("attribute '" + b.id + "' is outside A01..A49");
        AttributeDef fresh;
        fresh.attribute_key = b.id;
        fresh.name = b.id;
        fresh.group = "Organization";
        next.attributes_.push_back(fresh);
        it = std::prev(next.attributes_.end());
      }
      for (const auto& e : b.entries) {
        if (e.key == "name") it->name = e.value;
        else if (e.key == "group") it->group = e.value;
        else if (e.key == "minimum_set") it->minimum_set = parse_bool(b, e);
        else if (e.key == "value_kind")
          it->value_kind = parse_enum(
              b, e, std::array{ValueKind::Enum, ValueKind::Text,
                               ValueKind::ElementRef, ValueKind::Timestamp});
        else if (e.key == "value_set") it->value_set = text::split_list(e.value);
        else parse_error(b, "unknown key '" + e.key + "'");
      }
    } else if (b.kind == "pattern") {
      auto pid = pattern_from_string(b.id);
      if (!pid) parse_error(b, "unknown pattern");
      auto it = std::find_if(next.patterns_.begin(), next.patterns_.end(),
                             [&](const PatternDef& p) { return p.pattern_id == *pid; });
      for (const auto& e : b.entries) {
        std::optional<SlotKey> slot = slot_from_string(e.key);
        if (e.key == "condition_markers") slot = SlotKey::SR1;
        if (e.key == "constraint_markers") slot = SlotKey::SR5;
        if (!slot) parse_error(b, "unknown key '" + e.key + "'");
        it->connective_words[*slot] = text::split_list(e.value);
      }
    } else if (b.kind == "settings") {
      for (const auto& e : b.entries) {
        if (e.key == "case_insensitive_terms")
          next.settings_.case_insensitive_terms = parse_bool(b, e);
        else if (e.key == "forbid_trace")
          next.settings_.forbid_trace = parse_bool(b, e);
        else parse_error(b, "unknown key '" + e.key + "'");
      }
    } else {
      parse_error(b, "unknown section kind '" + b.kind + "'");
    }
  }
  std::sort(next.attributes_.begin(), next.attributes_.end(),
            [](const AttributeDef& a, const AttributeDef& b) {
              return attribute_key_less(a.attribute_key, b.attribute_key);
            });
  next.validate();
  *this = std::move(next);
}

void Catalog::validate() const {
  if (rules_.size() != kRuleCount) {
    violation("expected 42 rules, found " + std::to_string(rules_.size()));
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    if (r.rule_id != "R" + std::to_string(i + 1)) {
      violation("rule " + std::to_string(i + 1) + " has id '" + r.rule_id + "'");
    }
    if (r.automation == Automation::Automated && !has_checker(r.rule_id)) {
      violation("rule " + r.rule_id + " is Automated but has no checker");
    }
    for (const auto& c : r.contributes_to) {
      if (!find_characteristic(c)) {
        violation("rule " + r.rule_id + " contributes to unknown '" + c + "'");
      }
    }
  }

  if (characteristics_.size() != kCharacteristicCount) {
    violation("expected 15 characteristics, found " +
              std::to_string(characteristics_.size()));
  }
  for (std::size_t i = 0; i < characteristics_.size(); ++i) {
    const auto& c = characteristics_[i];
    const int n = static_cast<int>(i) + 1;
    if (c.characteristic_id != "C" + std::to_string(n)) {
      violation("characteristic " + std::to_string(n) + " has id '" +
                c.characteristic_id + "'");
    }
    auto expected = n <= 9 ? Applicability::Individual : Applicability::Set;
    if (c.applicability != expected) {
      violation(c.characteristic_id + " must have applicability " +
                std::string(to_string(expected)));
    }
    if (!c.nasa_mapped) violation(c.characteristic_id + " must be NASA-mapped");
    if (c.iso_mapped != (n != 15)) {
      violation(c.characteristic_id + " has the wrong ISO mapping flag");
    }
    if (text::trim(c.name).empty()) violation(c.characteristic_id + " has no name");
  }

  seen.clear();
  for (const auto& a : attributes_) {
    if (!seen.insert(a.attribute_key).second) {
      violation("duplicate attribute '" + a.attribute_key + "'");
    }
    if ((a.value_kind == ValueKind::Enum) == a.value_set.empty()) {
      violation("attribute " + a.attribute_key +
                ": value_set must be non-empty exactly when value_kind=Enum");
    }
  }
  for (int n = 1; n <= static_cast<int>(kAttributeCount); ++n) {
    auto key = numbered('A', n, 2);
    if (!seen.count(key)) violation("attribute " + key + " missing");
  }

  for (PatternId p : kAllPatterns) {
    if (pattern(p).slot_order != expected_slot_order(p)) {
      violation("pattern " + std::string(to_string(p)) + " has a bad slot order");
    }
  }
}

Catalog load_catalog(const std::optional<std::string>& config_path) {
  Catalog c = Catalog::defaults();
  if (config_path) {
    std::string contents;
    try {
      contents = read_file(*config_path);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::CatalogParseError, e.what());
    }
    c.apply_overrides(contents);
  }
  c.validate();
  return c;
}

}  // namespace mbsr
