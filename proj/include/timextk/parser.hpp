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

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "timextk/grammar.hpp"
#include "timextk/token.hpp"
#include "timextk/types.hpp"

namespace timextk {

// Derivation trees. Children are shared between parses; nodes are
// immutable once built.
struct SrcNode {
  NonTerminal label;
  int align = -1;  // alignment index under the parent rule, -1 if none
  // Leaves are matched input tokens (verbatim text).
  std::vector<std::variant<std::shared_ptr<const SrcNode>, std::string>>
      children;
};

struct TgtLeaf {
  enum class Kind { Int, Name };
  Kind kind = Kind::Name;
  std::int64_t value = 0;
  std::string name;
};

struct TgtNode {
  NonTerminal label;
  int align = -1;
  std::vector<std::variant<std::shared_ptr<const TgtNode>, TgtLeaf>> children;
};

// One synchronous derivation over the whole input.
struct SyncParse {
  std::shared_ptr<const SrcNode> source;
  std::shared_ptr<const TgtNode> target;
  int rule_id = -1;    // rule applied at the root
  int nil_tokens = 0;  // input tokens dominated by Nil
};

// "[TimeSpan](FindEarlier Present [Field]([Field:Month](MonthOfYear 3) ...))"
std::string render_source(const SrcNode& node);
std::string render_target(const TgtNode& node);
std::string render_parse(const SyncParse& parse);  // both trees, two lines

// Graphviz dot with both trees and dashed edges between aligned children.
std::string to_graph_description(const SyncParse& parse);

struct ParseResult {
  std::vector<SyncParse> parses;
  // When no parse covers the input: the maximal token spans some
  // constituent covers, for diagnostics.
  std::vector<TokenSpan> partial_spans;

  bool ok() const { return !parses.empty(); }
};

// Extended CYK+ over the synchronous grammar: derives every tree pair
// whose source side yields the full token sequence, deduplicated by tree
// identity. Same-span unit-rule chains never repeat a label, which keeps
// the derivation set finite under cyclic unit rules.
ParseResult parse(const std::vector<Token>& tokens, const Grammar& grammar);

}  // namespace timextk
