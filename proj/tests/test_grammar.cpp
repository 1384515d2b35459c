/*
 * Copyright 2026 The timextk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "support/grammar_gen.hpp"
#include "timextk/grammar.hpp"

using namespace timextk;

TEST_CASE("basic rule forms load") {
  const Grammar g = load_grammar(
      "# comment line\n"
      "\n"
      "[Unit] ||| semana ||| Weeks\n"
      "[Int:1-31] ||| seis ||| 6\n"
      "[Nil] ||| de ||| _\n"
      "[Period] ||| [Int:1-31]~1 [Unit]~2 ||| Simple [Int:1-31]~1 [Unit]~2\n"
      "[TimeSpan] ||| hoy ||| Present\n");
  CHECK(g.rules.size() == 5);
  CHECK(g.rules[0].parent.category == NtCategory::Unit);
  CHECK(g.rules[0].source.size() == 1);
  CHECK(g.rules[0].source[0].is_literal);
  CHECK(g.rules[2].target.empty());
  CHECK(g.rules[3].source[0].nt.lo == 1);
  CHECK(g.rules[3].source[0].nt.hi == 31);
  CHECK(g.rules[3].source[0].align == 1);
  CHECK(g.rules[4].target[0].name == "Present");
}

TEST_CASE("load serialize load is a fixpoint") {
  const char* text =
      "[Unit] ||| dias ||| Days\n"
      "[Unit] ||| [Unit]~1 ||| [Unit]~1\n"
      "[Int:1-31] ||| dos ||| 2\n"
      "[Nil] ||| el ||| _\n"
      "[Field:Day] ||| [Int:1-31]~1 ||| DayOfMonth [Int:1-31]~1\n"
      "[Field] ||| [Field:Day]~1 ||| [Field:Day]~1\n"
      "[TimeSpan] ||| [Nil] [Field]~1 ||| FindEarlier Present [Field]~1\n"
      "[Period] ||| [Int:1-31]~1 [Unit]~2 ||| Simple [Int:1-31]~1 [Unit]~2\n";
  const Grammar g1 = load_grammar(text);
  const std::string s1 = serialize_grammar(g1);
  const Grammar g2 = load_grammar(s1);
  CHECK(g1 == g2);
  CHECK(serialize_grammar(g2) == s1);
}

TEST_CASE("directives round trip") {
  const char* text =
      "#! partofday Morning 05:00 11:30\n"
      "#! season Winter 12-01\n"
      "[TimeSpan] ||| now ||| Present\n";
  const Grammar g = load_grammar(text);
  CHECK(g.config.part_of_day[0] == std::pair<int, int>{300, 690});
  CHECK(g.config.season_start[3] == std::pair<int, int>{12, 1});
  CHECK_FALSE(g.config == GrammarConfig{});
  const Grammar back = load_grammar(serialize_grammar(g));
  CHECK(back == g);
}

TEST_CASE("malformed rules are rejected with line numbers") {
  auto fails_at = [](const std::string& text, int line) {
    try {
      load_grammar(text);
      FAIL_CHECK("no error for: " << text);
    } catch (const GrammarError& e) {
      CHECK(e.line == line);
    }
  };
  // Missing separator.
  fails_at("[TimeSpan] ||| hoy\n", 1);
  // Unknown category.
  fails_at("[Bogus] ||| x ||| Present\n", 1);
  // Source NT without alignment.
  fails_at("[TimeSpan] ||| [Field] ||| FindEarlier Present [Field]~1\n", 1);
  // Alignment labels disagree.
  fails_at("[TimeSpan] ||| [Field:Day]~1 ||| FindEarlier Present [Field]~1\n",
           1);
  // Duplicate alignment index in the source.
  fails_at(
      "[Period] ||| [Unit]~1 [Unit]~1 ||| Sum Simple 1 [Unit]~1 Simple 1 "
      "[Unit]~1\n",
      1);
  // Target alignment with no source counterpart.
  fails_at("[TimeSpan] ||| hoy ||| FindEarlier Present [Field]~3\n", 1);
  // Aligned Nil child.
  fails_at("[TimeSpan] ||| [Nil]~1 hoy ||| Present\n", 1);
  // Non-Nil parent with empty target.
  fails_at("[TimeSpan] ||| hoy ||| _\n", 1);
  // Nil parent with a real target.
  fails_at("[Nil] ||| de ||| Present\n", 1);
  // Int literal outside the parent range.
  fails_at("[Int:1-5] ||| seis ||| 6\n", 1);
  // Int child range not inside the parent range.
  fails_at("[Int:1-5] ||| [Int:1-9]~1 ||| [Int:1-9]~1\n", 1);
  // Operator arity violation: Present takes no arguments.
  fails_at("[TimeSpan] ||| x ||| Present Present\n", 1);
  // FindEarlier needs a span and a field.
  fails_at("[TimeSpan] ||| x ||| FindEarlier Present\n", 1);
  // Unit parent with a field target.
  fails_at("[Unit] ||| q ||| DayOfMonth 1\n", 1);
  // Error line is the physical line of the broken rule.
  fails_at("[TimeSpan] ||| hoy ||| Present\n# fine\n[TimeSpan] ||| x |||\n",
           3);
  // Broken directives.
  fails_at("#! partofday Sometime 06:00 12:00\n", 1);
  fails_at("#! partofday Morning 6h00 12:00\n", 1);
  fails_at("#! season Spring 13-01\n", 1);
  fails_at("#! mystery 1 2\n", 1);
}

TEST_CASE("empty grammars load") {
  const Grammar g = load_grammar("# nothing but comments\n\n");
  CHECK(g.rules.empty());
  CHECK(serialize_grammar(g).empty());
}

TEST_CASE("finalize rebuilds lookup tables") {
  Grammar g = load_grammar(
      "[Unit] ||| Semana ||| Weeks\n"
      "[Period] ||| [Int:1-9]~1 [Unit]~2 ||| Simple [Int:1-9]~1 [Unit]~2\n");
  REQUIRE(g.int_classes.size() == 1);
  CHECK(g.int_classes[0] == std::pair<std::int64_t, std::int64_t>{1, 9});
  // Literal lookup is by folded text.
  CHECK(g.literal_first.count("semana") == 1);
  CHECK(g.nt_first.count("[Int:1-9]") == 1);
  g.rules.pop_back();
  finalize_grammar(g);
  CHECK(g.int_classes.empty());
  CHECK(g.nt_first.empty());
  CHECK(g.literal_first.count("semana") == 1);
}

TEST_CASE("validator flags duplicates") {
  const Grammar g = load_grammar(
      "[TimeSpan] ||| hoy ||| Present\n"
      "[TimeSpan] ||| hoy ||| Present\n");
  const auto diags = validate_grammar(g);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].kind == GrammarDiagnostic::Kind::DuplicateRule);
  CHECK(diags[0].rule_id == 1);
}

TEST_CASE("validator flags unreachable nonterminals") {
  const Grammar g = load_grammar(
      "[TimeSpan] ||| hoy ||| Present\n"
      "[Field:Lost] ||| x ||| DayOfMonth 1\n");
  const auto diags = validate_grammar(g);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].kind == GrammarDiagnostic::Kind::UnreachableNonterminal);
  CHECK(diags[0].rule_id == 1);
}

TEST_CASE("validator flags literals the tokenizer splits") {
  const Grammar g = load_grammar(
      "[TimeSpan] ||| 14:30 ||| Present\n");
  const auto diags = validate_grammar(g);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].kind == GrammarDiagnostic::Kind::LiteralTokenization);
}

TEST_CASE("reference grammars are clean") {
  for (const char* lang : {"es", "en"}) {
    CAPTURE(lang);
    const Grammar g = load_grammar_file(std::string(TIMEXTK_DATA_DIR) +
                                        "/grammars/" + lang + ".scfg");
    CHECK(g.rules.size() > 100);
    CHECK(validate_grammar(g).empty());
    // The on-disk grammars serialize and reload to the same object.
    CHECK(load_grammar(serialize_grammar(g)) == g);
  }
}

TEST_CASE("random generated grammars load and round trip") {
  std::mt19937 rng(101);
  testgen::RuleGen gen(rng);
  int built = 0;
  for (int i = 0; i < 300; ++i) {
    const std::string text = gen.grammar_text(12);
    if (text.empty()) continue;
    CAPTURE(text);
    const Grammar g = load_grammar(text);
    ++built;
    const std::string s = serialize_grammar(g);
    CHECK(load_grammar(s) == g);
  }
  CHECK(built > 200);
}
