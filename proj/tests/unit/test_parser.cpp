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

#include <random>

#include "doctest.h"
#include "mbsr/catalog.hpp"
#include "mbsr/error.hpp"
#include "mbsr/parser.hpp"
#include "support.hpp"

using namespace mbsr;
using namespace mbsr::test;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::defaults();
  return c;
}

ParseResult parse(std::string_view s) {
  static const Glossary empty;
  return parse_statement(s, empty, catalog());
}

std::string issues_string(const ParseResult& r) {
  std::vector<std::string> parts;
  for (const auto& i : r.issues) {
    std::string p(to_string(i.code));
    if (i.slot) p += "(" + std::string(to_string(*i.slot)) + ")";
    parts.push_back(p);
  }
  return text::join(parts, ", ");
}

}  // namespace

TEST_CASE("hand-annotated statements decompose into the expected slots") {
  auto cases = fixture_blocks("tests/fixtures/parser_cases.blocks");
  REQUIRE(cases.size() == 12);
  for (const auto& c : cases) {
    CAPTURE(c.id);
    const std::string text = *c.get("text");
    auto r = parse(text);
    CHECK(issues_string(r) == *c.get("issues"));
    const std::string pattern = *c.get("pattern");
    if (pattern == "none") {
      CHECK_FALSE(r.statement);
      CHECK_FALSE(r.diagnostics.matched_pattern);
      continue;
    }
    REQUIRE(r.statement);
    CHECK(to_string(r.statement->pattern) == pattern);
    for (SlotKey k : kAllSlots) {
      CAPTURE(to_string(k));
      auto expected = c.get(to_string(k));
      const auto& slot = r.statement->slot(k);
      if (expected) {
        REQUIRE(slot);
        CHECK(slot->text == *expected);
        // Fragments are byte-exact substrings of the source at their spans.
        const Span sp = r.diagnostics.slot_spans.at(k);
        CHECK(text.substr(sp.start, sp.size()) == *expected);
      } else {
        CHECK_FALSE(r.statement->filled(k));
      }
    }
  }
}

TEST_CASE("diagnostics report shall count and unconsumed text") {
  auto r = parse("The Pump shall start and the Valve shall open within 1 s.");
  CHECK(r.diagnostics.shall_count == 2);
  CHECK(r.diagnostics.shall_spans.size() == 2);
  CHECK(r.diagnostics.unconsumed.empty());

  auto none = parse("Just some words without the keyword");
  CHECK(none.diagnostics.shall_count == 0);
  REQUIRE(none.diagnostics.unconsumed.size() == 1);
  CHECK(none.diagnostics.unconsumed[0] == Span{0, 35});
}

TEST_CASE("pattern precedence: leading condition wins over trailing under") {
  auto r = parse("When commanded, the Arm shall stow the Drill within 5 s under any load.");
  REQUIRE(r.statement);
  CHECK(r.statement->pattern == PatternId::Iso2);
  CHECK(r.statement->slot(SlotKey::SR5)->text == "within 5 s under any load");
}

TEST_CASE("a condition marker without a comma does not make Iso2") {
  auto r = parse("When the Arm shall stow the Drill within 5 s.");
  REQUIRE(r.statement);
  CHECK(r.statement->pattern == PatternId::Iso1);
  CHECK(r.statement->slot(SlotKey::SR2)->text == "When the Arm");
}

TEST_CASE("empty and whitespace-only input") {
  for (std::string s : {"", "   ", "\t\n"}) {
    auto r = parse(s);
    CHECK(r.has(ParseErrorCode::NoShallKeyword));
    CHECK_FALSE(r.statement);
  }
  auto only = parse("shall");
  REQUIRE(only.statement);
  CHECK(only.has(ParseErrorCode::EmptySlot));
}

TEST_CASE("render rebuilds canonical text and rejects missing mandatory slots") {
  auto iso2 = parse(
      "While in the Sample_Collection mode, the Spacecraft shall collect "
      "Asteroid_A_Regolith with Regolith_Sample_Mass target between 0.5 kg and 1 kg.");
  CHECK(render_statement(*iso2.statement) ==
        "While in the Sample_Collection mode, the Spacecraft shall collect "
        "Asteroid_A_Regolith with Regolith_Sample_Mass target between 0.5 kg and 1 kg.");
  auto carson = parse("The Camera shall capture Surface_Images with a resolution of at most "
                      "10 cm under Low_Light conditions.");
  CHECK(render_statement(*carson.statement) ==
        "The Camera shall capture Surface_Images with a resolution of at most 10 cm under "
        "Low_Light conditions.");

  auto missing = parse("The Lander shall deploy the Solar_Array.");
  CHECK(error_of([&] { render_statement(*missing.statement); }) ==
        ErrorCode::MissingMandatorySlot);
}

TEST_CASE("slot binding: exact name, glossary synonym, then annotated span") {
  Glossary g;
  g.add(GlossaryTerm{"Spacecraft", {"S/C"}, "", "", {"E-SC"}});
  g.add(GlossaryTerm{"Sample_Collection mode", {}, "", "", {"E-MODE"}});
  ElementIndex elements{{"Spacecraft", "E-SC"},
                        {"collect", "E-ACT"},
                        {"Asteroid_A_Regolith", "E-REG"},
                        {"Regolith_Sample_Mass", "E-MASS"},
                        {"Sample_Collection mode", "E-MODE"}};
  auto r = parse_statement(
      "While in the Sample_Collection mode, the S/C shall collect Asteroid_A_Regolith "
      "with Regolith_Sample_Mass target between 0.5 kg and 1 kg.",
      g, catalog(), &elements);
  REQUIRE(r.statement);
  CHECK(r.statement->slot(SlotKey::SR1)->binding == "E-MODE");
  CHECK(r.statement->slot(SlotKey::SR2)->binding == "E-SC");
  CHECK(r.statement->slot(SlotKey::SR3)->binding == "E-ACT");
  CHECK(r.statement->slot(SlotKey::SR4)->binding == "E-REG");
  CHECK(r.statement->slot(SlotKey::SR5)->binding == "E-MASS");

  auto unbound = parse_statement("The Rover shall drive within 5 s.", g, catalog(), &elements);
  CHECK_FALSE(unbound.statement->slot(SlotKey::SR2)->binding);
}

TEST_CASE("catalog markers drive detection") {
  Catalog c = Catalog::defaults();
  c.apply_overrides("[pattern Iso2]\ncondition_markers = Once\n\n"
                    "[pattern Iso1]\nconstraint_markers = before\n");
  Glossary g;
  auto iso2 = parse_statement("Once deployed, the Arm shall extend the Scoop within 2 s.", g,
                              c);
  CHECK(iso2.statement->pattern == PatternId::Iso2);
  auto iso1 = parse_statement("The Arm shall extend before landing.", g, c);
  CHECK(iso1.statement->slot(SlotKey::SR5)->text == "before landing");
}

TEST_CASE("round trip over a generated corpus of 50 statements") {
  const std::vector<std::string> subjects = {"Spacecraft", "Rover", "Power_Subsystem",
                                             "Lander Camera", "Ground_Station"};
  const std::vector<std::string> actions = {"collect", "transmit", "store", "measure"};
  const std::vector<std::string> objects = {"Asteroid_A_Regolith", "Telemetry",
                                            "Surface_Images", "the Battery"};
  const std::vector<std::string> constraints = {
      "within 2 s", "at least every 10 s", "with a mass of no more than 5 kg",
      "between 0.5 kg and 1 kg", "per orbit"};
  const std::vector<std::string> conditions = {"While in Safe_Mode", "When commanded",
                                               "During Entry_Descent_Landing",
                                               "If the Battery is low"};
  const std::vector<std::string> carson_conditions = {"Safe_Mode conditions",
                                                      "nominal power", "Low_Light"};
  std::mt19937 rng(20260101);
  auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
  auto gap = [&] {
    static const char* gaps[] = {" ", "  ", "\t", " \t "};
    return std::string(gaps[rng() % 4]);
  };

  int ok = 0;
  for (int i = 0; i < 50; ++i) {
    std::string s;
    switch (i % 3) {
      case 0:
        s = pick(conditions) + "," + gap() + "the" + gap() + pick(subjects) + gap() +
            "shall" + gap() + pick(actions) + gap() + pick(objects) + gap() +
            pick(constraints) + ".";
        break;
      case 1:
        s = "The" + gap() + pick(subjects) + gap() + "shall" + gap() + pick(actions) + gap() +
            pick(objects) + gap() + pick(constraints) + ".";
        break;
      default:
        s = "The" + gap() + pick(subjects) + gap() + "shall" + gap() + pick(actions) + gap() +
            pick(objects) + gap() + pick(constraints) + gap() + "under" + gap() +
            pick(carson_conditions) + ".";
    }
    CAPTURE(s);
    auto r = parse(s);
    REQUIRE(r.slots_complete());
    CHECK(r.statement->pattern == static_cast<PatternId>(i % 3 == 0   ? PatternId::Iso2
                                                         : i % 3 == 1 ? PatternId::Iso1
                                                                      : PatternId::Carson));
    if (render_statement(*r.statement) == text::normalize_whitespace(s)) ++ok;
  }
  CHECK(ok == 50);
}

TEST_CASE("arbitrary input never crashes the parser") {
  const std::vector<std::string> fragments = {
      "shall", "Shall", ",", ".", " ", "  ", "the", "The", "While", "under", "in under",
      "with", "between", "TBD", "\xC3\xA9", "\xE2\x80\x94", "\xF0\x9F\x9A\x80", "\t", "\n",
      "a", "5", "_", "\xFF", "\xC3", "shall not", "be able to", "(", ")"};
  std::mt19937 rng(7);
  Glossary g;
  g.add(GlossaryTerm{"Spacecraft", {"S/C"}, "", "", {}});
  ElementIndex elements{{"Spacecraft", "E1"}, {"the", "E2"}};
  for (int i = 0; i < 10000; ++i) {
    std::string s;
    const int parts = static_cast<int>(rng() % 24);
    for (int p = 0; p < parts; ++p) {
      if (rng() % 4 == 0) {
        s += static_cast<char>(rng() % 256);
      } else {
        s += fragments[rng() % fragments.size()];
      }
    }
    ParseResult r;
    CHECK_NOTHROW(r = parse_statement(s, g, catalog(), &elements));
    for (const auto& sp : r.diagnostics.unconsumed) CHECK(sp.end <= s.size());
    for (const auto& [k, sp] : r.diagnostics.slot_spans) CHECK(sp.end <= s.size());
    if (r.slots_complete()) CHECK_NOTHROW(render_statement(*r.statement));
  }
}
