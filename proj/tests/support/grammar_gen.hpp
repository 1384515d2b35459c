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

// Random well-formed grammar and input generation for parser testing.
// Rules are built target-first: the target expression tree decides which
// non-terminal slots exist, the source is a permutation of those slots
// with literals and optional Nil children woven in, so the alignment
// bijection holds by construction. Grammars go through the text loader,
// exercising the production path.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "timextk/grammar.hpp"
#include "timextk/token.hpp"

namespace testgen {

struct Slot {
  std::string label;
  int align = 0;
};

class RuleGen {
 public:
  explicit RuleGen(std::mt19937& rng) : rng_(rng) {}

  // One serialized rule line, or empty when the draw degenerated.
  std::string rule_line() {
    slots_.clear();
    target_.clear();
    const int cat = pick(10);
    std::string parent;
    if (cat < 3) {
      parent = pick(2) ? "[TimeSpan]" : "[TimeSpan:S]";
      gen_span(2, true);
    } else if (cat < 5) {
      parent = pick(2) ? "[Period]" : "[Period:P]";
      gen_period(2);
    } else if (cat < 7) {
      parent = field_label();
      const int n = 1 + pick(2);
      for (int k = 0; k < n; ++k) gen_field();
    } else if (cat < 8) {
      parent = "[Unit]";
      gen_unit();
    } else if (cat < 9) {
      const auto [lo, hi] = int_ranges_[static_cast<std::size_t>(pick(3))];
      parent = int_label(lo, hi);
      gen_int(lo, hi);
    } else {
      parent = "[Nil]";
    }
    return assemble(parent);
  }

  // A whole grammar: joined rule lines, deduplicated, with at least one
  // TimeSpan or Period rule so roots can exist.
  std::string grammar_text(int max_rules) {
    std::set<std::string> lines;
    bool rooted = false;
    for (int attempts = 0; attempts < 200 && static_cast<int>(lines.size()) < max_rules;
         ++attempts) {
      std::string line = rule_line();
      if (line.empty()) continue;
      if (line.rfind("[TimeSpan", 0) == 0 || line.rfind("[Period", 0) == 0)
        rooted = true;
      lines.insert(line);
    }
    if (!rooted) return {};
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
  }

  // Input biased toward parseable strings: half the draws expand a random
  // root non-terminal through the grammar, the rest are token noise.
  std::vector<std::string> input_tokens(const timextk::Grammar& g) {
    if (pick(2) == 0) {
      auto derived = expand_from(g);
      if (!derived.empty() && derived.size() <= 6) return derived;
    }
    const int n = 1 + pick(6);
    std::vector<std::string> out;
    for (int k = 0; k < n; ++k) {
      if (pick(4) == 0)
        out.push_back(std::to_string(pick(12)));
      else
        out.push_back(alphabet_[static_cast<std::size_t>(pick(5))]);
    }
    return out;
  }

 private:
  std::mt19937& rng_;
  std::vector<Slot> slots_;
  std::vector<std::string> target_;

  static constexpr const char* alphabet_[5] = {"a", "b", "c", "d", "e"};
  static constexpr std::pair<int, int> int_ranges_[3] = {{1, 5}, {0, 9}, {2, 8}};

  int pick(int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng_);
  }

  std::string field_label() {
    static const char* labels[3] = {"[Field]", "[Field:A]", "[Field:B]"};
    return labels[pick(3)];
  }

  static std::string int_label(int lo, int hi) {
    return "[Int:" + std::to_string(lo) + "-" + std::to_string(hi) + "]";
  }

  std::string slot(const std::string& label) {
    const int align = static_cast<int>(slots_.size()) + 1;
    slots_.push_back({label, align});
    return label + "~" + std::to_string(align);
  }

  void gen_int(int lo, int hi) {
    // Sub-ranges from the pool keep the child-within-parent constraint.
    std::vector<std::pair<int, int>> subs;
    for (const auto& [l, h] : int_ranges_)
      if (l >= lo && h <= hi && !(l == lo && h == hi)) subs.push_back({l, h});
    if (!subs.empty() && pick(2) == 0) {
      const auto [l, h] = subs[static_cast<std::size_t>(pick(static_cast<int>(subs.size())))];
      target_.push_back(slot(int_label(l, h)));
      return;
    }
    target_.push_back(std::to_string(lo + pick(hi - lo + 1)));
  }

  void gen_unit() {
    static const char* units[5] = {"Days", "Weeks", "Months", "Years", "Hours"};
    if (pick(3) == 0)
      target_.push_back(slot("[Unit]"));
    else
      target_.push_back(units[pick(5)]);
  }

  void gen_int_arg() {
    if (pick(3) == 0) {
      const auto [lo, hi] = int_ranges_[static_cast<std::size_t>(pick(3))];
      target_.push_back(slot(int_label(lo, hi)));
    } else {
      target_.push_back(std::to_string(1 + pick(9)));
    }
  }

  void gen_field() {
    if (pick(3) == 0) {
      target_.push_back(slot(field_label()));
      return;
    }
    switch (pick(5)) {
      case 0:
        target_.push_back("MonthOfYear");
        gen_int_arg();
        break;
      case 1:
        target_.push_back("DayOfMonth");
        gen_int_arg();
        break;
      case 2:
        target_.push_back("DayOfWeek");
        gen_int_arg();
        break;
      case 3:
        target_.push_back("PartOfDay");
        target_.push_back(pick(2) ? "Night" : "Morning");
        break;
      default:
        target_.push_back("Year");
        gen_int_arg();
        break;
    }
  }

  void gen_period(int depth) {
    if (depth > 0 && pick(4) == 0) {
      target_.push_back(pick(2) ? "[Period]" : "[Period:P]");
      target_.back() = slot(target_.back());
      return;
    }
    const int form = depth > 0 ? pick(4) : pick(2);
    if (form <= 1) {
      target_.push_back("Simple");
      if (form == 0 && pick(4) == 0)
        target_.push_back("X");
      else
        gen_int_arg();
      gen_unit();
    } else if (form == 2) {
      target_.push_back("Sum");
      gen_period(depth - 1);
      gen_period(depth - 1);
    } else {
      target_.push_back("SetOf");
      gen_period(depth - 1);
    }
  }

  // A ref constant is only legal as the entire target, so `allow_ref`
  // holds for the outermost call alone.
  void gen_span(int depth, bool allow_ref = false) {
    if (depth > 0 && pick(4) == 0) {
      target_.push_back(slot(pick(2) ? "[TimeSpan]" : "[TimeSpan:S]"));
      return;
    }
    const int form = depth > 0 ? pick(6) : pick(2);
    switch (form) {
      case 0:
        target_.push_back("Present");
        break;
      case 1: {
        if (!allow_ref) {
          target_.push_back("Present");
          break;
        }
        static const char* refs[3] = {"PastRef", "PresentRef", "FutureRef"};
        target_.push_back(refs[pick(3)]);
        break;
      }
      case 2:
        target_.push_back(pick(2) ? "FindEarlier" : "FindLater");
        gen_span(depth - 1);
        gen_field();
        break;
      case 3:
        target_.push_back("FindEnclosing");
        gen_span(depth - 1);
        gen_unit();
        break;
      case 4:
        target_.push_back(pick(2) ? "MoveEarlier" : "MoveLater");
        gen_span(depth - 1);
        gen_period(depth - 1);
        break;
      default:
        target_.push_back("FindAbsolute");
        gen_field();
        break;
    }
  }

  std::string assemble(const std::string& parent) {
    // Source: shuffled slots plus literals; Nil children appear rarely.
    std::vector<std::string> source;
    std::vector<Slot> order = slots_;
    std::shuffle(order.begin(), order.end(), rng_);
    for (const auto& s : order)
      source.push_back(s.label + "~" + std::to_string(s.align));
    const int extra = parent == "[Nil]" ? 1 + pick(2) : pick(3);
    for (int k = 0; k < extra; ++k) {
      std::string lit = alphabet_[pick(5)];
      source.insert(source.begin() + pick(static_cast<int>(source.size()) + 1), lit);
    }
    if (parent != "[Nil]" && !source.empty() && pick(5) == 0)
      source.insert(source.begin() + pick(static_cast<int>(source.size()) + 1),
                    "[Nil]");
    if (source.empty()) return {};
    if (source.size() > 4) return {};

    std::string line = parent + " |||";
    for (const auto& s : source) line += " " + s;
    line += " |||";
    if (parent == "[Nil]") {
      line += " _";
    } else {
      for (const auto& t : target_) line += " " + t;
    }
    return line;
  }

  // Random top-down expansion of a TimeSpan or Period label into tokens.
  std::vector<std::string> expand_from(const timextk::Grammar& g) {
    std::vector<int> roots;
    for (const auto& r : g.rules)
      if (r.parent.category == timextk::NtCategory::TimeSpan ||
          r.parent.category == timextk::NtCategory::Period)
        roots.push_back(r.id);
    if (roots.empty()) return {};
    std::vector<std::string> out;
    if (!expand_rule(g, g.rules[static_cast<std::size_t>(
                          roots[static_cast<std::size_t>(
                              pick(static_cast<int>(roots.size())))])],
                     out, 0))
      return {};
    return out;
  }

  bool expand_rule(const timextk::Grammar& g,
                   const timextk::SynchronousRule& rule,
                   std::vector<std::string>& out, int depth) {
    if (depth > 6 || out.size() > 6) return false;
    for (const auto& sym : rule.source) {
      if (sym.is_literal) {
        out.push_back(sym.literal);
        continue;
      }
      if (sym.nt.category == timextk::NtCategory::Int) {
        out.push_back(std::to_string(
            sym.nt.lo + pick(static_cast<int>(sym.nt.hi - sym.nt.lo) + 1)));
        continue;
      }
      std::vector<int> options;
      for (const auto& r : g.rules)
        if (r.parent == sym.nt) options.push_back(r.id);
      if (options.empty()) return false;
      const auto& chosen = g.rules[static_cast<std::size_t>(
          options[static_cast<std::size_t>(pick(static_cast<int>(options.size())))])];
      if (!expand_rule(g, chosen, out, depth + 1)) return false;
    }
    return out.size() <= 6;
  }
};

}  // namespace testgen
