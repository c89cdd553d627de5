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

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace mbsr {

enum class SlotKey { SR1, SR2, SR3, SR4, SR5 };
inline constexpr std::array<SlotKey, 5> kAllSlots{
    SlotKey::SR1, SlotKey::SR2, SlotKey::SR3, SlotKey::SR4, SlotKey::SR5};

enum class PatternId { Iso1, Iso2, Carson };
inline constexpr std::array<PatternId, 3> kAllPatterns{
    PatternId::Iso1, PatternId::Iso2, PatternId::Carson};

std::string_view to_string(SlotKey k);
std::string_view to_string(PatternId p);
std::optional<SlotKey> slot_from_string(std::string_view s);
std::optional<PatternId> pattern_from_string(std::string_view s);

/// "SR1_Condition" ... "SR5_Constraint_of_Action".
std::string_view slot_property_name(SlotKey k);

/// Slots that must be filled for a statement of pattern `p` to be complete.
std::span<const SlotKey> mandatory_slots(PatternId p);

struct SlotValue {
  std::string text;
  std::optional<std::string> binding;  // element_id

  bool operator==(const SlotValue&) const = default;
};

/// The five pattern slots of a structured "shall" statement.
struct StructuredStatement {
  PatternId pattern = PatternId::Iso1;
  std::array<std::optional<SlotValue>, 5> slots;

  std::optional<SlotValue>& slot(SlotKey k) {
    return slots[static_cast<std::size_t>(k)];
  }
  const std::optional<SlotValue>& slot(SlotKey k) const {
    return slots[static_cast<std::size_t>(k)];
  }
  bool filled(SlotKey k) const {
    const auto& s = slot(k);
    return s.has_value() && !s->text.empty();
  }
  /// All mandatory slots of the pattern are filled.
  bool complete() const;

  bool operator==(const StructuredStatement&) const = default;
};

}  // namespace mbsr
