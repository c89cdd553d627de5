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

// Registries for the writing rules, quality characteristics, requirement
// attributes and statement patterns. The defaults are compiled in and can be
// overridden section by section from a block-format file:
//
//   [rule R10]
//   phrases = be capable of, be able to, be designed to
//
//   [attribute A34]
//   value_set = Critical, High, Medium, Low
//
// A loaded Catalog is immutable and safe to share between threads.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbsr/statement.hpp"

namespace mbsr {

enum class Automation { Automated, Manual };
enum class Applicability { Individual, Set };
enum class Derivation { FormalTransformation, AgreedToObligation };
enum class ValueKind { Enum, Text, ElementRef, Timestamp };

std::string_view to_string(Automation a);
std::string_view to_string(Applicability a);
std::string_view to_string(Derivation d);
std::string_view to_string(ValueKind v);

struct RuleDef {
  std::string rule_id;  // "R1".."R42"
  std::string name;
  std::string description;
  Automation automation = Automation::Manual;
  std::vector<std::string> contributes_to;  // characteristic ids
  // Checker-specific lexicon: forbidden phrases for R10, irregular
  // participles for R2. Unused by other rules.
  std::vector<std::string> phrases;

  bool operator==(const RuleDef&) const = default;
};

struct CharacteristicDef {
  std::string characteristic_id;  // "C1".."C15"
  std::string name;
  Applicability applicability = Applicability::Individual;
  Derivation derivation = Derivation::FormalTransformation;
  bool nasa_mapped = true;
  bool iso_mapped = true;

  bool operator==(const CharacteristicDef&) const = default;
};

struct AttributeDef {
  std::string attribute_key;  // "A01".."A49" or "X.."
  std::string name;
  std::string group;
  bool minimum_set = false;
  ValueKind value_kind = ValueKind::Text;
  std::vector<std::string> value_set;  // non-empty iff value_kind == Enum
  // A15/A16 read through to the expression id/name and are never stored.
  bool derived = false;

  /// XMI property name, e.g. "A08_System_V_V_Primary_Method_". Minimum-set
  /// members carry the GtWR asterisk, which mangles to the trailing '_'.
  std::string export_name() const;

  bool operator==(const AttributeDef&) const = default;
};

struct PatternDef {
  PatternId pattern_id = PatternId::Iso1;
  std::vector<SlotKey> slot_order;
  std::map<SlotKey, std::vector<std::string>> connective_words;

  bool operator==(const PatternDef&) const = default;
};

struct CatalogSettings {
  bool case_insensitive_terms = false;
  bool forbid_trace = false;

  bool operator==(const CatalogSettings&) const = default;
};

/// Rule ids that have an automated checker in the rules engine.
inline constexpr std::string_view kCheckedRules[] = {"R1", "R2", "R10", "R16"};
bool has_checker(std::string_view rule_id);

/// Reserved id of the auxiliary TBD/TBC/TBR/TBN check.
inline constexpr std::string_view kTbxRuleId = "TBX";

inline constexpr std::size_t kRuleCount = 42;
inline constexpr std::size_t kCharacteristicCount = 15;
inline constexpr std::size_t kAttributeCount = 49;

class Catalog {
 public:
  /// The built-in catalog; always satisfies validate().
  static Catalog defaults();

  const std::vector<RuleDef>& rules() const { return rules_; }
  const std::vector<CharacteristicDef>& characteristics() const {
    return characteristics_;
  }
  const std::vector<AttributeDef>& attributes() const { return attributes_; }
  const std::vector<PatternDef>& patterns() const { return patterns_; }
  const CatalogSettings& settings() const { return settings_; }

  const RuleDef* find_rule(std::string_view id) const;
  const CharacteristicDef* find_characteristic(std::string_view id) const;
  const AttributeDef* find_attribute(std::string_view key) const;
  const PatternDef& pattern(PatternId id) const;

  /// In id order: Individual -> C1..C9, Set -> C10..C15.
  std::vector<CharacteristicDef> characteristics_for(Applicability a) const;

  const std::vector<std::string>& condition_markers() const;
  const std::vector<std::string>& constraint_markers(PatternId p) const;

  /// Applies override sections. Throws CatalogParseError on malformed
  /// sections and InvariantViolation if the result breaks an invariant.
  void apply_overrides(std::string_view config_text);

  /// Throws Error(InvariantViolation) describing the first broken invariant.
  void validate() const;

  bool operator==(const Catalog&) const = default;

 private:
  std::vector<RuleDef> rules_;
  std::vector<CharacteristicDef> characteristics_;
  std::vector<AttributeDef> attributes_;
  std::vector<PatternDef> patterns_;
  CatalogSettings settings_;
};

/// Default catalog with the overrides in `config_path` applied, if given.
Catalog load_catalog(const std::optional<std::string>& config_path);

/// Key order used for attribute maps: A-keys numerically, then X-keys.
bool attribute_key_less(std::string_view a, std::string_view b);
bool is_attribute_key_syntax(std::string_view key);

}  // namespace mbsr
