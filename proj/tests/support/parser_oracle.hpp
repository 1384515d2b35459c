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

// Brute-force derivation enumeration used as an independent oracle for the
// chart parser. The oracle builds rendered tree strings bottom-up per
// span: first all rules whose children are strictly smaller spans, then a
// fixpoint over single-non-terminal rules, blocking unit chains that
// repeat a label. Derivations are deduplicated per span by rendered pair,
// mirroring the chart's cell-level deduplication.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "timextk/grammar.hpp"
#include "timextk/parser.hpp"
#include "timextk/token.hpp"

namespace oracle {

struct Derivation {
  std::string src;
  std::string tgt;
  // Labels along the maximal single-child non-terminal spine from the
  // root; a unit rule may not re-add a label already present.
  std::vector<std::string> unit_path;
};

inline std::string pair_key(const Derivation& d) {
  return d.src + '\x1f' + d.tgt;
}

class BruteForceParser {
 public:
  BruteForceParser(const std::vector<timextk::Token>& tokens,
                   const timextk::Grammar& grammar)
      : tokens_(tokens), grammar_(grammar) {
    for (const auto& t : tokens_)
      folded_.push_back(timextk::fold_token(t.text));
    for (const auto& r : grammar_.rules)
      for (const auto& s : r.source)
        if (!s.is_literal && s.nt.category == timextk::NtCategory::Int)
          int_classes_.insert({s.nt.lo, s.nt.hi});
  }

  // Rendered "source\x1ftarget" strings of every full-cover TimeSpan or
  // Period derivation, sorted and deduplicated.
  std::vector<std::string> roots() {
    const int n = static_cast<int>(tokens_.size());
    for (int len = 1; len <= n; ++len)
      for (int i = 0; i + len <= n; ++i) fill_cell(i, i + len);
    std::set<std::string> out;
    for (const auto& [key, bucket] : table_) {
      const auto& [i, j, label] = key;
      if (i != 0 || j != n) continue;
      const auto cat = categories_.at(label);
      if (cat != timextk::NtCategory::TimeSpan &&
          cat != timextk::NtCategory::Period)
        continue;
      for (const auto& [k, d] : bucket) out.insert(k);
    }
    return {out.begin(), out.end()};
  }

 private:
  using Key = std::tuple<int, int, std::string>;
  using Bucket = std::map<std::string, Derivation>;

  const std::vector<timextk::Token>& tokens_;
  const timextk::Grammar& grammar_;
  std::vector<std::string> folded_;
  std::set<std::pair<std::int64_t, std::int64_t>> int_classes_;
  std::map<Key, Bucket> table_;
  std::map<std::string, timextk::NtCategory> categories_;

  Bucket& bucket(int i, int j, const timextk::NonTerminal& nt) {
    categories_.emplace(nt.label(), nt.category);
    return table_[{i, j, nt.label()}];
  }

  void fill_cell(int i, int j) {
    if (j - i == 1 && tokens_[static_cast<std::size_t>(i)].numeric) {
      const auto value = *tokens_[static_cast<std::size_t>(i)].numeric;
      for (const auto& [lo, hi] : int_classes_) {
        if (value < lo || value > hi) continue;
        timextk::NonTerminal nt{timextk::NtCategory::Int, "", lo, hi};
        Derivation d;
        d.src = nt.label() + "(" +
                tokens_[static_cast<std::size_t>(i)].text + ")";
        d.tgt = nt.label() + "(" + std::to_string(value) + ")";
        d.unit_path = {nt.label()};
        bucket(i, j, nt).emplace(pair_key(d), d);
      }
    }

    for (const auto& rule : grammar_.rules)
      if (!is_unit(rule)) {
        std::vector<const Derivation*> children;
        std::vector<std::string> literals;
        match_from(rule, 0, i, i, j, children, literals);
      }

    // Unit rules feed each other within the cell; iterate to fixpoint.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& rule : grammar_.rules) {
        if (!is_unit(rule)) continue;
        const Bucket children = bucket(i, j, rule.source[0].nt);
        for (const auto& [key, child] : children) {
          if (std::find(child.unit_path.begin(), child.unit_path.end(),
                        rule.parent.label()) != child.unit_path.end())
            continue;
          Derivation d = combine(rule, {&child}, {});
          d.unit_path.insert(d.unit_path.end(), child.unit_path.begin(),
                             child.unit_path.end());
          if (bucket(i, j, rule.parent).emplace(pair_key(d), d).second)
            changed = true;
        }
      }
    }
  }

  static bool is_unit(const timextk::SynchronousRule& r) {
    return r.source.size() == 1 && !r.source[0].is_literal;
  }

  // Matches rule source symbols over [i, j) with every child a strictly
  // smaller span. `literals` collects the original text of each matched
  // literal token in source order.
  void match_from(const timextk::SynchronousRule& rule, std::size_t sym_at,
                  int pos, int i, int j,
                  std::vector<const Derivation*>& children,
                  std::vector<std::string>& literals) {
    if (sym_at == rule.source.size()) {
      if (pos != j) return;
      Derivation d = combine(rule, children, literals);
      bucket(i, j, rule.parent).emplace(pair_key(d), d);
      return;
    }
    const auto& sym = rule.source[sym_at];
    if (sym.is_literal) {
      if (pos < j && folded_[static_cast<std::size_t>(pos)] ==
                         timextk::fold_token(sym.literal)) {
        literals.push_back(tokens_[static_cast<std::size_t>(pos)].text);
        match_from(rule, sym_at + 1, pos + 1, i, j, children, literals);
        literals.pop_back();
      }
      return;
    }
    for (int split = pos + 1; split <= j; ++split) {
      if (pos == i && split == j) continue;  // whole-span units run later
      auto it = table_.find({pos, split, sym.nt.label()});
      if (it == table_.end()) continue;
      for (const auto& [key, child] : it->second) {
        children.push_back(&child);
        match_from(rule, sym_at + 1, split, i, j, children, literals);
        children.pop_back();
      }
    }
  }

  // Renders the parent derivation. `children` and `literals` are in
  // source order; target non-terminals pick children by alignment index.
  static Derivation combine(const timextk::SynchronousRule& rule,
                            const std::vector<const Derivation*>& children,
                            const std::vector<std::string>& literals) {
    std::map<int, const Derivation*> by_align;
    Derivation d;
    d.src = rule.parent.label() + "(";
    std::size_t child_at = 0, lit_at = 0;
    bool first = true;
    for (const auto& sym : rule.source) {
      if (!first) d.src += ' ';
      first = false;
      if (sym.is_literal) {
        d.src += literals[lit_at++];
      } else {
        const Derivation* child = children[child_at++];
        d.src += child->src;
        if (sym.align != -1) by_align[sym.align] = child;
      }
    }
    d.src += ")";

    d.tgt = rule.parent.label() + "(";
    first = true;
    for (const auto& sym : rule.target) {
      if (!first) d.tgt += ' ';
      first = false;
      switch (sym.kind) {
        case timextk::TargetSymbol::Kind::Nt:
          d.tgt += by_align.at(sym.align)->tgt;
          break;
        case timextk::TargetSymbol::Kind::IntLiteral:
          d.tgt += std::to_string(sym.value);
          break;
        case timextk::TargetSymbol::Kind::Name:
          d.tgt += sym.name;
          break;
      }
    }
    d.tgt += ")";
    d.unit_path = {rule.parent.label()};
    return d;
  }
};

// Chart parses rendered through the library's own renderer, in the same
// sorted-set form the oracle produces.
inline std::vector<std::string> chart_roots(
    const std::vector<timextk::Token>& tokens,
    const timextk::Grammar& grammar) {
  auto result = timextk::parse(tokens, grammar);
  std::set<std::string> out;
  for (const auto& p : result.parses)
    out.insert(timextk::render_source(*p.source) + '\x1f' +
               timextk::render_target(*p.target));
  return {out.begin(), out.end()};
}

}  // namespace oracle
