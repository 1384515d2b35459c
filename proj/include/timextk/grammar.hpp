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

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace timextk {

enum class NtCategory { TimeSpan, Period, Field, Unit, Int, Nil };

std::string to_string(NtCategory c);

// A non-terminal label. Int labels carry an inclusive numeric range
// instead of a subtype: [Int:1-31].
struct NonTerminal {
  NtCategory category = NtCategory::Nil;
  std::string subtype;
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::string label() const;
  bool operator==(const NonTerminal&) const = default;
};

struct SourceSymbol {
  bool is_literal = false;
  std::string literal;  // verbatim token as written in the grammar
  NonTerminal nt;
  int align = -1;  // alignment index; -1 when unaligned (literals, Nil)

  bool operator==(const SourceSymbol&) const = default;
};

struct TargetSymbol {
  enum class Kind { Nt, IntLiteral, Name };
  Kind kind = Kind::Name;
  NonTerminal nt;
  int align = -1;
  std::int64_t value = 0;
  std::string name;  // operator, field, unit or constant name

  bool operator==(const TargetSymbol&) const = default;
};

struct SynchronousRule {
  NonTerminal parent;
  std::vector<SourceSymbol> source;
  std::vector<TargetSymbol> target;  // empty only for Nil parents
  int id = -1;    // position in Grammar::rules
  int line = 0;   // 1-based line in the grammar file, 0 if built in memory

  bool operator==(const SynchronousRule& o) const {
    return parent == o.parent && source == o.source && target == o.target;
  }
};

// Calendar conventions a grammar may override with "#!" directives.
struct GrammarConfig {
  // Minute-of-day half-open ranges indexed by PartOfDay enum order
  // (Morning, Midday, Afternoon, Evening, Night). Containment checks use
  // the first matching entry.
  std::array<std::pair<int, int>, 5> part_of_day = {
      {{360, 720}, {720, 780}, {720, 1080}, {1080, 1440}, {0, 360}}};
  // (month, day) each season starts, indexed by Season enum order.
  std::array<std::pair<int, int>, 4> season_start = {
      {{3, 21}, {6, 21}, {9, 23}, {12, 21}}};

  bool operator==(const GrammarConfig&) const = default;
};

struct Grammar {
  std::vector<SynchronousRule> rules;
  GrammarConfig config;

  // Lookup tables rebuilt by finalize_grammar. Keys: folded literal text
  // and non-terminal label of a rule's first source symbol.
  std::unordered_map<std::string, std::vector<int>> literal_first;
  std::unordered_map<std::string, std::vector<int>> nt_first;
  // Distinct Int ranges appearing anywhere in rule sources; every numeric
  // token in range forms an implicit [Int:lo-hi] constituent.
  std::vector<std::pair<std::int64_t, std::int64_t>> int_classes;

  bool operator==(const Grammar& o) const {
    return rules == o.rules && config == o.config;
  }
};

struct GrammarError : std::runtime_error {
  int line;
  GrammarError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

// Parses the rule format: one rule per line,
//   [Parent] ||| src1 src2 ... ||| tgt1 tgt2 ...
// with "~k" alignment suffixes on non-terminals, "_" as the empty target
// and "#" starting comment lines. Targets are type-checked against the
// operator registry. Throws GrammarError.
Grammar load_grammar(std::string_view text);
Grammar load_grammar_file(const std::string& path);

std::string serialize_grammar(const Grammar& g);

// Rebuilds the lookup tables. Called by load_grammar; needed after
// building or mutating a Grammar in memory.
void finalize_grammar(Grammar& g);

struct GrammarDiagnostic {
  enum class Kind { UnreachableNonterminal, LiteralTokenization, DuplicateRule };
  Kind kind;
  int rule_id;
  std::string message;
};

// Non-fatal lint: unreachable non-terminals, literals the tokenizer would
// split (which can therefore never match), duplicate rules.
std::vector<GrammarDiagnostic> validate_grammar(const Grammar& g);

}  // namespace timextk
