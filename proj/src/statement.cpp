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

#include "mbsr/statement.hpp"

#include <algorithm>

namespace mbsr {

namespace {

constexpr std::array<SlotKey, 3> kIso1Mandatory{SlotKey::SR2, SlotKey::SR3,
                                                SlotKey::SR5};
constexpr std::array<SlotKey, 5> kIso2Mandatory{
    SlotKey::SR1, SlotKey::SR2, SlotKey::SR3, SlotKey::SR4, SlotKey::SR5};
constexpr std::array<SlotKey, 4> kCarsonMandatory{SlotKey::SR1, SlotKey::SR2,
                                                  SlotKey::SR3, SlotKey::SR5};

}  // namespace

std::string_view to_string(SlotKey k) {
  switch (k) {
    case SlotKey::SR1: return "SR1";
    case SlotKey::SR2: return "SR2";
    case SlotKey::SR3: return "SR3";
    case SlotKey::SR4: return "SR4";
    case SlotKey::SR5: return "SR5";
  }
  return "SR?";
}

std::string_view to_string(PatternId p) {
  switch (p) {
    case PatternId::Iso1: return "Iso1";
    case PatternId::Iso2: return "Iso2";
    case PatternId::Carson: return "Carson";
  }
  return "?";
}

std::optional<SlotKey> slot_from_string(std::string_view s) {
  for (SlotKey k : kAllSlots) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<PatternId> pattern_from_string(std::string_view s) {
  for (PatternId p : kAllPatterns) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

std::string_view slot_property_name(SlotKey k) {
  switch (k) {
    case SlotKey::SR1: return "SR1_Condition";
    case SlotKey::SR2: return "SR2_Subject";
    case SlotKey::SR3: return "SR3_Action";
    case SlotKey::SR4: return "SR4_Object";
    case SlotKey::SR5: return "SR5_Constraint_of_Action";
  }
  return "";
}

std::span<const SlotKey> mandatory_slots(PatternId p) {
  switch (p) {
    case PatternId::Iso1: return kIso1Mandatory;
    case PatternId::Iso2: return kIso2Mandatory;
    case PatternId::Carson: return kCarsonMandatory;
  }
  return {};
}

bool StructuredStatement::complete() const {
  auto req = mandatory_slots(pattern);
  return std::all_of(req.begin(), req.end(),
                     [&](SlotKey k) { return filled(k); });
}

}  // namespace mbsr
