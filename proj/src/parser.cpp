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

#include "timextk/parser.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace timextk {

namespace {

struct Constituent {
  NonTerminal label;
  int begin = 0;
  int end = 0;
  std::shared_ptr<const SrcNode> src;
  std::shared_ptr<const TgtNode> tgt;
  int rule_id = -1;  // -1 for implicit integer leaves
};

// A dotted rule that has consumed source symbols [0, dot) over
// [start, end). Children collects the arena indexes of the consumed
// non-terminal constituents in source order.
struct Item {
  const SynchronousRule* rule = nullptr;
  int start = 0;
  std::size_t dot = 0;
  std::vector<int> children;
};

int count_nil_tokens(const SrcNode& node, bool under_nil) {
  const bool nil = under_nil || node.label.category == NtCategory::Nil;
  int total = 0;
  for (const auto& child : node.children) {
    if (const auto* sub =
            std::get_if<std::shared_ptr<const SrcNode>>(&child)) {
      total += count_nil_tokens(**sub, nil);
    } else if (nil) {
      total += 1;
    }
  }
  return total;
}

// True when `parent` already occurs in the same-span unit chain rooted at
// `node`: the maximal path of single-non-terminal children. Blocks cyclic
// unit derivations without bounding legitimate ones.
bool unit_chain_blocks(const NonTerminal& parent, const SrcNode* node) {
  while (true) {
    if (node->label == parent) return true;
    if (node->children.size() != 1) return false;
    const auto* sub =
        std::get_if<std::shared_ptr<const SrcNode>>(&node->children[0]);
    if (!sub) return false;
    node = sub->get();
  }
}

class ChartParser {
 public:
  ChartParser(const std::vector<Token>& tokens, const Grammar& grammar)
      : tokens_(tokens), grammar_(grammar) {
    folded_.reserve(tokens.size());
    for (const Token& t : tokens_) folded_.push_back(fold_token(t.text));
  }

  ParseResult run() {
    const int n = static_cast<int>(tokens_.size());
    items_by_end_.assign(static_cast<std::size_t>(n) + 1, {});
    for (int j = 1; j <= n; ++j) step(j);

    ParseResult result;
    for (int idx : cell(0, n)) {
      const Constituent& c = arena_[static_cast<std::size_t>(idx)];
      if (c.label.category != NtCategory::TimeSpan &&
          c.label.category != NtCategory::Period)
        continue;
      SyncParse p;
      p.source = c.src;
      p.target = c.tgt;
      p.rule_id = c.rule_id;
      p.nil_tokens = count_nil_tokens(*c.src, false);
      result.parses.push_back(std::move(p));
    }
    if (result.parses.empty()) result.partial_spans = maximal_spans();
    return result;
  }

 private:
  const std::vector<Token>& tokens_;
  const Grammar& grammar_;
  std::vector<std::string> folded_;

  std::vector<Constituent> arena_;
  std::unordered_map<std::int64_t, std::vector<int>> cells_;
  std::unordered_map<std::int64_t, std::unordered_set<std::string>> seen_;
  std::vector<std::vector<Item>> items_by_end_;
  std::deque<int> work_;

  static std::int64_t cell_key(int i, int j) {
    return static_cast<std::int64_t>(i) * 1000000 + j;
  }

  std::vector<int>& cell(int i, int j) { return cells_[cell_key(i, j)]; }

  // Adds a constituent unless an identical tree pair is already in the
  // cell; newly added ones go on the work queue.
  void add(Constituent c) {
    const std::string key =
        render_source(*c.src) + '\x1f' + render_target(*c.tgt);
    if (!seen_[cell_key(c.begin, c.end)].insert(key).second) return;
    const int idx = static_cast<int>(arena_.size());
    cell(c.begin, c.end).push_back(idx);
    arena_.push_back(std::move(c));
    work_.push_back(idx);
  }

  void step(int j) {
    const Token& tok = tokens_[static_cast<std::size_t>(j - 1)];
    const std::string& folded = folded_[static_cast<std::size_t>(j - 1)];

    // Implicit [Int:lo-hi] leaves over numeric tokens.
    if (tok.numeric) {
      for (const auto& [lo, hi] : grammar_.int_classes) {
        if (*tok.numeric < lo || *tok.numeric > hi) continue;
        NonTerminal nt{NtCategory::Int, "", lo, hi};
        auto src = std::make_shared<SrcNode>();
        src->label = nt;
        src->children.emplace_back(tok.text);
        auto tgt = std::make_shared<TgtNode>();
        tgt->label = nt;
        tgt->children.emplace_back(
            TgtLeaf{TgtLeaf::Kind::Int, *tok.numeric, {}});
        add({nt, j - 1, j, std::move(src), std::move(tgt), -1});
      }
    }

    // Rules whose first source symbol is the current token.
    if (const auto it = grammar_.literal_first.find(folded);
        it != grammar_.literal_first.end()) {
      for (int rid : it->second) {
        const SynchronousRule& rule =
            grammar_.rules[static_cast<std::size_t>(rid)];
        advance(Item{&rule, j - 1, 0, {}}, j);
      }
    }

    // Items ending right before this token whose next symbol is a literal.
    // The list is final: iteration j-1 has completed.
    for (const Item& item :
         items_by_end_[static_cast<std::size_t>(j - 1)]) {
      const SourceSymbol& next = item.rule->source[item.dot];
      if (next.is_literal && fold_token(next.literal) == folded)
        advance(item, j);
    }

    // Completions cascade within this end position.
    while (!work_.empty()) {
      const int idx = work_.front();
      work_.pop_front();
      complete(idx, j);
    }
  }

  // Consumes one symbol (the one at item.dot, already matched over
  // [?, j)); either finishes the rule or stores the longer item.
  void advance(Item item, int j, int child_idx = -1) {
    if (child_idx >= 0) item.children.push_back(child_idx);
    item.dot += 1;
    if (item.dot == item.rule->source.size()) {
      finish(item, j);
    } else {
      items_by_end_[static_cast<std::size_t>(j)].push_back(std::move(item));
    }
  }

  void finish(const Item& item, int j) {
    const SynchronousRule& rule = *item.rule;
    // Unit rules recursing within one cell: drop derivations whose chain
    // repeats the parent label.
    if (rule.source.size() == 1 && !rule.source[0].is_literal &&
        !item.children.empty()) {
      const Constituent& child =
          arena_[static_cast<std::size_t>(item.children[0])];
      if (unit_chain_blocks(rule.parent, child.src.get())) return;
    }

    auto src = std::make_shared<SrcNode>();
    src->label = rule.parent;
    std::size_t child_at = 0;
    std::unordered_map<int, int> align_to_child;  // alignment index -> arena
    int tok_at = item.start;
    for (const SourceSymbol& sym : rule.source) {
      if (sym.is_literal) {
        src->children.emplace_back(
            tokens_[static_cast<std::size_t>(tok_at)].text);
        tok_at += 1;
        continue;
      }
      const int cidx = item.children[child_at++];
      const Constituent& child = arena_[static_cast<std::size_t>(cidx)];
      auto sub = std::make_shared<SrcNode>(*child.src);
      sub->align = sym.align;
      src->children.emplace_back(
          std::shared_ptr<const SrcNode>(std::move(sub)));
      if (sym.align != -1) align_to_child[sym.align] = cidx;
      tok_at = child.end;
    }

    auto tgt = std::make_shared<TgtNode>();
    tgt->label = rule.parent;
    for (const TargetSymbol& sym : rule.target) {
      switch (sym.kind) {
        case TargetSymbol::Kind::Nt: {
          const Constituent& child =
              arena_[static_cast<std::size_t>(align_to_child.at(sym.align))];
          auto sub = std::make_shared<TgtNode>(*child.tgt);
          sub->align = sym.align;
          tgt->children.emplace_back(
              std::shared_ptr<const TgtNode>(std::move(sub)));
          break;
        }
        case TargetSymbol::Kind::IntLiteral:
          tgt->children.emplace_back(
              TgtLeaf{TgtLeaf::Kind::Int, sym.value, {}});
          break;
        case TargetSymbol::Kind::Name:
          tgt->children.emplace_back(
              TgtLeaf{TgtLeaf::Kind::Name, 0, sym.name});
          break;
      }
    }

    add({rule.parent, item.start, j, std::move(src), std::move(tgt),
         rule.id});
  }

  void complete(int idx, int j) {
    const Constituent c = arena_[static_cast<std::size_t>(idx)];

    // Waiting items end where the constituent begins; that list is final
    // because no constituent is empty.
    for (const Item& item :
         items_by_end_[static_cast<std::size_t>(c.begin)]) {
      const SourceSymbol& next = item.rule->source[item.dot];
      if (!next.is_literal && next.nt == c.label) advance(item, j, idx);
    }

    // Rules whose first source symbol is this label.
    if (const auto it = grammar_.nt_first.find(c.label.label());
        it != grammar_.nt_first.end()) {
      for (int rid : it->second) {
        const SynchronousRule& rule =
            grammar_.rules[static_cast<std::size_t>(rid)];
        advance(Item{&rule, c.begin, 0, {}}, j, idx);
      }
    }
  }

  std::vector<TokenSpan> maximal_spans() const {
    std::vector<TokenSpan> spans;
    for (const Constituent& c : arena_) spans.push_back({c.begin, c.end});
    std::vector<TokenSpan> out;
    for (const TokenSpan& s : spans) {
      bool contained = false;
      for (const TokenSpan& o : spans) {
        if ((o.begin < s.begin && s.end <= o.end) ||
            (o.begin <= s.begin && s.end < o.end)) {
          contained = true;
          break;
        }
      }
      if (!contained) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

void render_source_into(const SrcNode& node, std::string& out) {
  out += node.label.label();
  out += '(';
  bool first = true;
  for (const auto& child : node.children) {
    if (!first) out += ' ';
    first = false;
    if (const auto* sub =
            std::get_if<std::shared_ptr<const SrcNode>>(&child)) {
      render_source_into(**sub, out);
    } else {
      out += std::get<std::string>(child);
    }
  }
  out += ')';
}

void render_target_into(const TgtNode& node, std::string& out) {
  out += node.label.label();
  out += '(';
  bool first = true;
  for (const auto& child : node.children) {
    if (!first) out += ' ';
    first = false;
    if (const auto* sub =
            std::get_if<std::shared_ptr<const TgtNode>>(&child)) {
      render_target_into(**sub, out);
    } else {
      const TgtLeaf& leaf = std::get<TgtLeaf>(child);
      if (leaf.kind == TgtLeaf::Kind::Int)
        out += std::to_string(leaf.value);
      else
        out += leaf.name;
    }
  }
  out += ')';
}

}  // namespace

std::string render_source(const SrcNode& node) {
  std::string out;
  render_source_into(node, out);
  return out;
}

std::string render_target(const TgtNode& node) {
  std::string out;
  render_target_into(node, out);
  return out;
}

std::string render_parse(const SyncParse& parse) {
  return render_source(*parse.source) + "\n" + render_target(*parse.target);
}

namespace {

void dot_escape_into(const std::string& s, std::string& out) {
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
}

using NodeNames = std::unordered_map<const void*, std::string>;

void dot_leaf(const std::string& name, const std::string& text,
              std::string& out) {
  out += "  " + name + " [shape=plaintext,label=\"";
  dot_escape_into(text, out);
  out += "\"];\n";
}

void dot_source(const SrcNode& node, std::string& out, int& counter,
                NodeNames& names) {
  const std::string name = "s" + std::to_string(counter++);
  names[&node] = name;
  std::string label = node.label.label();
  if (node.align != -1) label += "~" + std::to_string(node.align);
  out += "  " + name + " [label=\"";
  dot_escape_into(label, out);
  out += "\"];\n";
  for (const auto& child : node.children) {
    if (const auto* sub =
            std::get_if<std::shared_ptr<const SrcNode>>(&child)) {
      dot_source(**sub, out, counter, names);
      out += "  " + name + " -> " + names[sub->get()] + ";\n";
    } else {
      const std::string leaf = "s" + std::to_string(counter++);
      dot_leaf(leaf, std::get<std::string>(child), out);
      out += "  " + name + " -> " + leaf + ";\n";
    }
  }
}

void dot_target(const TgtNode& node, std::string& out, int& counter,
                NodeNames& names) {
  const std::string name = "t" + std::to_string(counter++);
  names[&node] = name;
  std::string label = node.label.label();
  if (node.align != -1) label += "~" + std::to_string(node.align);
  out += "  " + name + " [label=\"";
  dot_escape_into(label, out);
  out += "\"];\n";
  for (const auto& child : node.children) {
    if (const auto* sub =
            std::get_if<std::shared_ptr<const TgtNode>>(&child)) {
      dot_target(**sub, out, counter, names);
      out += "  " + name + " -> " + names[sub->get()] + ";\n";
    } else {
      const TgtLeaf& leaf = std::get<TgtLeaf>(child);
      const std::string lname = "t" + std::to_string(counter++);
      dot_leaf(lname,
               leaf.kind == TgtLeaf::Kind::Int ? std::to_string(leaf.value)
                                               : leaf.name,
               out);
      out += "  " + name + " -> " + lname + ";\n";
    }
  }
}

// Corresponding rule applications pair children by alignment index; the
// walk follows those pairs down both trees.
void alignment_edges(const SrcNode& s, const TgtNode& t,
                     const NodeNames& names, std::string& out) {
  out += "  " + names.at(&s) + " -> " + names.at(&t) +
         " [style=dashed,constraint=false,dir=none];\n";
  std::unordered_map<int, const SrcNode*> by_align;
  for (const auto& child : s.children) {
    if (const auto* sub = std::get_if<std::shared_ptr<const SrcNode>>(&child);
        sub && (*sub)->align != -1)
      by_align[(*sub)->align] = sub->get();
  }
  for (const auto& child : t.children) {
    const auto* sub = std::get_if<std::shared_ptr<const TgtNode>>(&child);
    if (!sub || (*sub)->align == -1) continue;
    if (const auto it = by_align.find((*sub)->align); it != by_align.end())
      alignment_edges(*it->second, **sub, names, out);
  }
}

}  // namespace

std::string to_graph_description(const SyncParse& parse) {
  std::string out = "digraph parse {\n  rankdir=TB;\n";
  NodeNames names;
  int counter = 0;
  dot_source(*parse.source, out, counter, names);
  counter = 0;
  dot_target(*parse.target, out, counter, names);
  alignment_edges(*parse.source, *parse.target, names, out);
  out += "}\n";
  return out;
}

ParseResult parse(const std::vector<Token>& tokens, const Grammar& grammar) {
  if (tokens.empty()) return {};
  return ChartParser(tokens, grammar).run();
}

}  // namespace timextk
