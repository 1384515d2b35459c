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

#include "timextk/grammar.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "timextk/calendar.hpp"
#include "timextk/operators.hpp"
#include "timextk/token.hpp"

namespace timextk {

std::string to_string(NtCategory c) {
  switch (c) {
    case NtCategory::TimeSpan: return "TimeSpan";
    case NtCategory::Period: return "Period";
    case NtCategory::Field: return "Field";
    case NtCategory::Unit: return "Unit";
    case NtCategory::Int: return "Int";
    case NtCategory::Nil: return "Nil";
  }
  return "Nil";
}

std::string NonTerminal::label() const {
  std::string out = "[" + to_string(category);
  if (category == NtCategory::Int) {
    out += ":" + std::to_string(lo) + "-" + std::to_string(hi);
  } else if (!subtype.empty()) {
    out += ":" + subtype;
  }
  out += "]";
  return out;
}

namespace {

std::optional<NtCategory> category_of(std::string_view s) {
  if (s == "TimeSpan") return NtCategory::TimeSpan;
  if (s == "Period") return NtCategory::Period;
  if (s == "Field") return NtCategory::Field;
  if (s == "Unit") return NtCategory::Unit;
  if (s == "Int") return NtCategory::Int;
  if (s == "Nil") return NtCategory::Nil;
  return std::nullopt;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Parses "[Cat]" / "[Cat:Sub]" / "[Int:lo-hi]", without alignment suffix.
NonTerminal parse_nonterminal(std::string_view s, int line) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw GrammarError(line, "bad non-terminal: " + std::string(s));
  const std::string_view body = s.substr(1, s.size() - 2);
  const std::size_t colon = body.find(':');
  const std::string_view cat_str =
      colon == std::string_view::npos ? body : body.substr(0, colon);
  const auto cat = category_of(cat_str);
  if (!cat)
    throw GrammarError(line,
                       "unknown non-terminal category: " + std::string(s));
  NonTerminal nt;
  nt.category = *cat;
  if (*cat == NtCategory::Int) {
    if (colon == std::string_view::npos)
      throw GrammarError(line, "Int non-terminal needs a range: " +
                                   std::string(s));
    const std::string_view range = body.substr(colon + 1);
    const std::size_t dash = range.find('-');
    if (dash == std::string_view::npos)
      throw GrammarError(line, "bad Int range: " + std::string(s));
    const auto lo = parse_int(range.substr(0, dash));
    const auto hi = parse_int(range.substr(dash + 1));
    if (!lo || !hi || *lo < 0 || *lo > *hi)
      throw GrammarError(line, "bad Int range: " + std::string(s));
    nt.lo = *lo;
    nt.hi = *hi;
  } else if (colon != std::string_view::npos) {
    nt.subtype = std::string(body.substr(colon + 1));
    if (nt.subtype.empty())
      throw GrammarError(line, "empty subtype: " + std::string(s));
  }
  return nt;
}

// Splits "sym" or "sym~k"; returns the alignment index or -1.
std::pair<std::string_view, int> split_alignment(std::string_view s,
                                                 int line) {
  const std::size_t close = s.rfind(']');
  const std::size_t tilde = s.find('~', close == std::string_view::npos
                                           ? 0
                                           : close);
  if (s.front() != '[' || tilde == std::string_view::npos) return {s, -1};
  const auto k = parse_int(s.substr(tilde + 1));
  if (!k || *k < 1)
    throw GrammarError(line, "bad alignment index: " + std::string(s));
  return {s.substr(0, tilde), static_cast<int>(*k)};
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Checks the target side of a rule against the operator registry: a typed
// prefix expression whose expected type is fixed by the parent category.
class TargetChecker {
 public:
  TargetChecker(const SynchronousRule& rule) : rule_(rule) {}

  void check() {
    switch (rule_.parent.category) {
      case NtCategory::Nil:
        if (!rule_.target.empty()) fail("Nil rules take an empty target");
        return;
      case NtCategory::Int:
        check_int_parent();
        break;
      case NtCategory::Unit:
        unit_expr();
        break;
      case NtCategory::Period:
        period_expr();
        break;
      case NtCategory::TimeSpan:
        span_or_ref_expr();
        break;
      case NtCategory::Field:
        do {
          field_expr();
        } while (pos_ < rule_.target.size());
        break;
    }
    if (pos_ != rule_.target.size()) fail("trailing symbols in target");
  }

 private:
  const SynchronousRule& rule_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw GrammarError(rule_.line, msg);
  }

  const TargetSymbol& take() {
    if (pos_ >= rule_.target.size()) fail("target expression is incomplete");
    return rule_.target[pos_++];
  }

  const SymbolInfo* info(const TargetSymbol& s) const {
    return s.kind == TargetSymbol::Kind::Name ? lookup_symbol(s.name)
                                              : nullptr;
  }

  void check_int_parent() {
    const TargetSymbol& s = take();
    if (s.kind == TargetSymbol::Kind::IntLiteral) {
      if (s.value < rule_.parent.lo || s.value > rule_.parent.hi)
        fail("integer literal outside the parent Int range");
      return;
    }
    if (s.kind == TargetSymbol::Kind::Nt &&
        s.nt.category == NtCategory::Int) {
      if (s.nt.lo < rule_.parent.lo || s.nt.hi > rule_.parent.hi)
        fail("child Int range exceeds the parent range");
      return;
    }
    fail("Int rules produce an integer");
  }

  void int_arg() {
    const TargetSymbol& s = take();
    if (s.kind == TargetSymbol::Kind::IntLiteral) return;
    if (s.kind == TargetSymbol::Kind::Nt && s.nt.category == NtCategory::Int)
      return;
    fail("expected an integer argument");
  }

  void amount_arg() {
    const TargetSymbol& s = take();
    if (s.kind == TargetSymbol::Kind::IntLiteral) return;
    if (s.kind == TargetSymbol::Kind::Nt && s.nt.category == NtCategory::Int)
      return;
    if (const SymbolInfo* i = info(s); i && i->kind == SymbolKind::Unspecified)
      return;
    fail("expected an amount (integer or X)");
  }

  void unit_expr() {
    const TargetSymbol& s = take();
    if (s.kind == TargetSymbol::Kind::Nt && s.nt.category == NtCategory::Unit)
      return;
    if (const SymbolInfo* i = info(s); i && i->kind == SymbolKind::UnitName)
      return;
    fail("expected a unit");
  }

  void field_expr() {
    const TargetSymbol& s = take();
    if (s.kind == TargetSymbol::Kind::Nt &&
        s.nt.category == NtCategory::Field)
      return;
    const SymbolInfo* i = info(s);
    if (!i || i->kind != SymbolKind::FieldName) fail("expected a field");
    const CalField field = static_cast<CalField>(i->code);
    if (field == CalField::PartOfDay) {
      const TargetSymbol& v = take();
      const SymbolInfo* vi = info(v);
      if (!vi || vi->kind != SymbolKind::PodConstant)
        fail("PartOfDay takes a part-of-day constant");
      return;
    }
    if (field == CalField::SeasonOfYear) {
      const TargetSymbol& v = take();
      const SymbolInfo* vi = info(v);
      if (!vi || vi->kind != SymbolKind::SeasonConstant)
        fail("SeasonOfYear takes a season constant");
      return;
    }
    int_arg();
  }

  void period_expr() {
    const TargetSymbol& s = take();
    if (s.kind == TargetSymbol::Kind::Nt &&
        s.nt.category == NtCategory::Period)
      return;
    const SymbolInfo* i = info(s);
    if (!i || i->kind != SymbolKind::PeriodOperator)
      fail("expected a period expression");
    if (i->name == "Simple") {
      amount_arg();
      unit_expr();
    } else if (i->name == "Sum") {
      period_expr();
      period_expr();
    } else {  // SetOf
      period_expr();
    }
  }

  void span_expr() {
    const TargetSymbol& s = take();
    if (s.kind == TargetSymbol::Kind::Nt &&
        s.nt.category == NtCategory::TimeSpan)
      return;
    const SymbolInfo* i = info(s);
    if (!i || i->kind != SymbolKind::SpanOperator)
      fail("expected a time span expression");
    switch (i->code) {
      case 0:  // Present
        break;
      case 1:  // FindAbsolute
        field_expr();
        break;
      case 2:  // FindEarlier
      case 3:  // FindLater
      case 5:  // FindWithin
        span_expr();
        field_expr();
        break;
      case 4:   // FindEnclosing
      case 10:  // Underspecified
        span_expr();
        unit_expr();
        break;
      case 6:  // MoveEarlier
      case 7:  // MoveLater
      case 8:  // StartAtEndOf
      case 9:  // EndAtStartOf
        span_expr();
        period_expr();
        break;
      default:
        fail("unknown span operator");
    }
  }

  void span_or_ref_expr() {
    if (pos_ < rule_.target.size()) {
      if (const SymbolInfo* i = info(rule_.target[pos_]);
          i && i->kind == SymbolKind::RefConstant) {
        ++pos_;
        return;
      }
    }
    span_expr();
  }
};

void check_rule(const SynchronousRule& rule) {
  const int line = rule.line;
  if (rule.source.empty())
    throw GrammarError(line, "rules need a non-empty source");
  if (rule.parent.category == NtCategory::Nil) {
    if (!rule.target.empty())
      throw GrammarError(line, "Nil rules take an empty target");
  } else if (rule.target.empty()) {
    throw GrammarError(line, "only Nil rules take an empty target");
  }

  // Alignment bijection over non-Nil source NTs and all target NTs.
  std::map<int, NonTerminal> src_aligned;
  for (const SourceSymbol& s : rule.source) {
    if (s.is_literal) continue;
    if (s.nt.category == NtCategory::Nil) {
      if (s.align != -1)
        throw GrammarError(line, "Nil children are never aligned");
      continue;
    }
    if (s.align == -1)
      throw GrammarError(line, "source non-terminal " + s.nt.label() +
                                   " needs an alignment index");
    if (!src_aligned.emplace(s.align, s.nt).second)
      throw GrammarError(line, "duplicate source alignment index ~" +
                                   std::to_string(s.align));
  }
  std::map<int, NonTerminal> tgt_aligned;
  for (const TargetSymbol& t : rule.target) {
    if (t.kind != TargetSymbol::Kind::Nt) continue;
    if (t.nt.category == NtCategory::Nil)
      throw GrammarError(line, "Nil never appears in targets");
    if (t.align == -1)
      throw GrammarError(line, "target non-terminal " + t.nt.label() +
                                   " needs an alignment index");
    if (!tgt_aligned.emplace(t.align, t.nt).second)
      throw GrammarError(line, "duplicate target alignment index ~" +
                                   std::to_string(t.align));
  }
  if (src_aligned.size() != tgt_aligned.size())
    throw GrammarError(line, "source and target alignments do not pair up");
  for (const auto& [k, nt] : src_aligned) {
    const auto it = tgt_aligned.find(k);
    if (it == tgt_aligned.end())
      throw GrammarError(line, "alignment ~" + std::to_string(k) +
                                   " has no target counterpart");
    if (!(it->second == nt))
      throw GrammarError(line, "alignment ~" + std::to_string(k) +
                                   " pairs different labels");
  }

  TargetChecker(rule).check();
}

std::string serialize_symbol(const SourceSymbol& s) {
  if (s.is_literal) return s.literal;
  std::string out = s.nt.label();
  if (s.align != -1) out += "~" + std::to_string(s.align);
  return out;
}

std::string serialize_symbol(const TargetSymbol& t) {
  switch (t.kind) {
    case TargetSymbol::Kind::Nt:
      return t.nt.label() + "~" + std::to_string(t.align);
    case TargetSymbol::Kind::IntLiteral:
      return std::to_string(t.value);
    case TargetSymbol::Kind::Name:
      return t.name;
  }
  return {};
}

std::string serialize_rule(const SynchronousRule& r) {
  std::string out = r.parent.label() + " |||";
  for (const SourceSymbol& s : r.source) out += " " + serialize_symbol(s);
  out += " |||";
  if (r.target.empty()) {
    out += " _";
  } else {
    for (const TargetSymbol& t : r.target) out += " " + serialize_symbol(t);
  }
  return out;
}

std::optional<int> parse_minutes(std::string_view s) {
  if (s.size() != 5 || s[2] != ':') return std::nullopt;
  const auto h = parse_int(s.substr(0, 2));
  const auto m = parse_int(s.substr(3, 2));
  if (!h || !m || *m > 59) return std::nullopt;
  const int v = static_cast<int>(*h) * 60 + static_cast<int>(*m);
  if (v > 1440) return std::nullopt;
  return v;
}

void apply_directive(GrammarConfig& config, std::string_view body, int line) {
  const auto parts = split_ws(body);
  if (parts.empty()) throw GrammarError(line, "empty directive");
  if (parts[0] == "partofday") {
    if (parts.size() != 4)
      throw GrammarError(line, "partofday takes a name and two times");
    const SymbolInfo* i = lookup_symbol(std::string(parts[1]));
    if (!i || i->kind != SymbolKind::PodConstant)
      throw GrammarError(line, "unknown part of day: " + std::string(parts[1]));
    const auto from = parse_minutes(parts[2]);
    const auto to = parse_minutes(parts[3]);
    if (!from || !to || *from >= *to)
      throw GrammarError(line, "bad part-of-day range");
    config.part_of_day[static_cast<std::size_t>(i->code)] = {*from, *to};
    return;
  }
  if (parts[0] == "season") {
    if (parts.size() != 3)
      throw GrammarError(line, "season takes a name and a start date");
    const SymbolInfo* i = lookup_symbol(std::string(parts[1]));
    if (!i || i->kind != SymbolKind::SeasonConstant)
      throw GrammarError(line, "unknown season: " + std::string(parts[1]));
    const std::string_view md = parts[2];
    if (md.size() != 5 || md[2] != '-')
      throw GrammarError(line, "bad season start date");
    const auto m = parse_int(md.substr(0, 2));
    const auto d = parse_int(md.substr(3, 2));
    if (!m || !d || *m < 1 || *m > 12 || *d < 1 ||
        *d > days_in_month(2001, static_cast<int>(*m)))
      throw GrammarError(line, "bad season start date");
    config.season_start[static_cast<std::size_t>(i->code)] = {
        static_cast<int>(*m), static_cast<int>(*d)};
    return;
  }
  throw GrammarError(line, "unknown directive: " + std::string(parts[0]));
}

}  // namespace

Grammar load_grammar(std::string_view text) {
  Grammar g;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view raw_line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const std::string_view line = trim(raw_line);
    if (line.empty()) continue;
    if (line.rfind("#!", 0) == 0) {
      apply_directive(g.config, line.substr(2), line_no);
      continue;
    }
    if (line[0] == '#') continue;

    // Split on " ||| ".
    std::vector<std::string_view> parts;
    std::size_t p = 0;
    while (true) {
      const std::size_t sep = line.find("|||", p);
      if (sep == std::string_view::npos) {
        parts.push_back(trim(line.substr(p)));
        break;
      }
      parts.push_back(trim(line.substr(p, sep - p)));
      p = sep + 3;
    }
    if (parts.size() != 3)
      throw GrammarError(line_no, "rules have three |||-separated parts");

    SynchronousRule rule;
    rule.line = line_no;
    rule.id = static_cast<int>(g.rules.size());
    const auto parent_syms = split_ws(parts[0]);
    if (parent_syms.size() != 1)
      throw GrammarError(line_no, "exactly one parent label expected");
    rule.parent = parse_nonterminal(parent_syms[0], line_no);

    for (std::string_view sym : split_ws(parts[1])) {
      SourceSymbol s;
      if (sym.front() == '[' && sym.find(']') != std::string_view::npos) {
        const auto [label, align] = split_alignment(sym, line_no);
        s.is_literal = false;
        s.nt = parse_nonterminal(label, line_no);
        s.align = align;
      } else {
        s.is_literal = true;
        s.literal = std::string(sym);
      }
      rule.source.push_back(std::move(s));
    }

    const auto tgt_syms = split_ws(parts[2]);
    if (tgt_syms.empty())
      throw GrammarError(line_no, "empty target; write _ for Nil rules");
    if (!(tgt_syms.size() == 1 && tgt_syms[0] == "_")) {
      for (std::string_view sym : tgt_syms) {
        TargetSymbol t;
        if (sym == "_")
          throw GrammarError(line_no, "_ must be the whole target");
        if (sym.front() == '[' && sym.find(']') != std::string_view::npos) {
          const auto [label, align] = split_alignment(sym, line_no);
          t.kind = TargetSymbol::Kind::Nt;
          t.nt = parse_nonterminal(label, line_no);
          t.align = align;
        } else if ((sym[0] >= '0' && sym[0] <= '9') || sym[0] == '-') {
          const auto v = parse_int(sym);
          if (!v || *v < 0)
            throw GrammarError(line_no,
                               "bad integer literal: " + std::string(sym));
          t.kind = TargetSymbol::Kind::IntLiteral;
          t.value = *v;
        } else {
          if (!lookup_symbol(sym))
            throw GrammarError(line_no,
                               "unknown operator: " + std::string(sym));
          t.kind = TargetSymbol::Kind::Name;
          t.name = std::string(sym);
        }
        rule.target.push_back(std::move(t));
      }
    }

    check_rule(rule);
    g.rules.push_back(std::move(rule));
  }
  finalize_grammar(g);
  return g;
}

Grammar load_grammar_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GrammarError(0, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_grammar(buf.str());
}

std::string serialize_grammar(const Grammar& g) {
  std::string out;
  if (!(g.config == GrammarConfig{})) {
    static constexpr std::array<std::string_view, 5> kPods = {
        "Morning", "Midday", "Afternoon", "Evening", "Night"};
    static constexpr std::array<std::string_view, 4> kSeasons = {
        "Spring", "Summer", "Fall", "Winter"};
    char buf[64];
    for (std::size_t i = 0; i < kPods.size(); ++i) {
      const auto [from, to] = g.config.part_of_day[i];
      std::snprintf(buf, sizeof(buf), "#! partofday %s %02d:%02d %02d:%02d\n",
                    std::string(kPods[i]).c_str(), from / 60, from % 60,
                    to / 60, to % 60);
      out += buf;
    }
    for (std::size_t i = 0; i < kSeasons.size(); ++i) {
      const auto [m, d] = g.config.season_start[i];
      std::snprintf(buf, sizeof(buf), "#! season %s %02d-%02d\n",
                    std::string(kSeasons[i]).c_str(), m, d);
      out += buf;
    }
  }
  for (const SynchronousRule& r : g.rules) {
    out += serialize_rule(r);
    out += '\n';
  }
  return out;
}

void finalize_grammar(Grammar& g) {
  g.literal_first.clear();
  g.nt_first.clear();
  g.int_classes.clear();
  std::set<std::pair<std::int64_t, std::int64_t>> classes;
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    SynchronousRule& r = g.rules[i];
    r.id = static_cast<int>(i);
    const SourceSymbol& first = r.source.front();
    if (first.is_literal) {
      g.literal_first[fold_token(first.literal)].push_back(r.id);
    } else {
      g.nt_first[first.nt.label()].push_back(r.id);
    }
    for (const SourceSymbol& s : r.source) {
      if (!s.is_literal && s.nt.category == NtCategory::Int)
        classes.insert({s.nt.lo, s.nt.hi});
    }
  }
  g.int_classes.assign(classes.begin(), classes.end());
}

std::vector<GrammarDiagnostic> validate_grammar(const Grammar& g) {
  std::vector<GrammarDiagnostic> out;

  // Reachability from the start categories over rule parents.
  std::set<std::string> reachable;
  for (const SynchronousRule& r : g.rules) {
    if (r.parent.category == NtCategory::TimeSpan ||
        r.parent.category == NtCategory::Period)
      reachable.insert(r.parent.label());
    for (const SourceSymbol& s : r.source) {
      if (s.is_literal) continue;
      if (s.nt.category == NtCategory::TimeSpan ||
          s.nt.category == NtCategory::Period)
        reachable.insert(s.nt.label());
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const SynchronousRule& r : g.rules) {
      if (!reachable.count(r.parent.label())) continue;
      for (const SourceSymbol& s : r.source) {
        if (s.is_literal) continue;
        if (reachable.insert(s.nt.label()).second) changed = true;
      }
    }
  }
  std::set<std::string> reported;
  for (const SynchronousRule& r : g.rules) {
    const std::string label = r.parent.label();
    if (!reachable.count(label) && reported.insert(label).second) {
      out.push_back({GrammarDiagnostic::Kind::UnreachableNonterminal, r.id,
                     label + " is not derivable from a start category"});
    }
  }

  // Literals the tokenizer would split can never match an input token.
  std::set<std::string> checked;
  for (const SynchronousRule& r : g.rules) {
    for (const SourceSymbol& s : r.source) {
      if (!s.is_literal || !checked.insert(s.literal).second) continue;
      const auto toks = tokenize(s.literal);
      if (toks.size() != 1 || toks[0].text != s.literal) {
        out.push_back({GrammarDiagnostic::Kind::LiteralTokenization, r.id,
                       "literal \"" + s.literal +
                           "\" does not survive tokenization; split it into " +
                           std::to_string(std::max<std::size_t>(
                               toks.size(), 2)) +
                           " symbols"});
      }
    }
  }

  std::map<std::string, int> seen;
  for (const SynchronousRule& r : g.rules) {
    const std::string key = serialize_rule(r);
    const auto [it, inserted] = seen.emplace(key, r.id);
    if (!inserted) {
      out.push_back({GrammarDiagnostic::Kind::DuplicateRule, r.id,
                     "duplicate of rule " + std::to_string(it->second)});
    }
  }
  return out;
}

}  // namespace timextk
