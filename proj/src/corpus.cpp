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

#include "timextk/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "timextk/token.hpp"

namespace timextk {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
    --e;
  return std::string(s.substr(b, e - b));
}

// Decodes the entity starting at s[i] ('&'). Advances i past it.
void append_entity(std::string_view s, std::size_t& i, std::string& out) {
  const std::size_t semi = s.find(';', i);
  if (semi == std::string_view::npos || semi - i > 10) {
    out += '&';
    ++i;
    return;
  }
  const std::string_view name = s.substr(i + 1, semi - i - 1);
  if (name == "amp") out += '&';
  else if (name == "lt") out += '<';
  else if (name == "gt") out += '>';
  else if (name == "quot") out += '"';
  else if (name == "apos") out += '\'';
  else if (!name.empty() && name[0] == '#') {
    long code = 0;
    try {
      code = (name.size() > 1 && (name[1] == 'x' || name[1] == 'X'))
                 ? std::stol(std::string(name.substr(2)), nullptr, 16)
                 : std::stol(std::string(name.substr(1)));
    } catch (...) {
      code = -1;
    }
    if (code < 0 || code > 0x10FFFF) {
      out += '&';
      ++i;
      return;
    }
    // UTF-8 encode
    const unsigned c = static_cast<unsigned>(code);
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  } else {
    out += '&';
    ++i;
    return;
  }
  i = semi + 1;
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '&') {
      append_entity(s, i, out);
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::map<std::string, std::string> parse_attrs(std::string_view tag) {
  std::map<std::string, std::string> attrs;
  std::size_t i = 0;
  // skip the element name
  while (i < tag.size() && tag[i] != ' ' && tag[i] != '\t' && tag[i] != '\n')
    ++i;
  while (i < tag.size()) {
    while (i < tag.size() && (tag[i] == ' ' || tag[i] == '\t' ||
                              tag[i] == '\n' || tag[i] == '\r' ||
                              tag[i] == '/'))
      ++i;
    if (i >= tag.size()) break;
    const std::size_t key_begin = i;
    while (i < tag.size() && tag[i] != '=' && tag[i] != ' ') ++i;
    const std::string key = std::string(tag.substr(key_begin, i - key_begin));
    while (i < tag.size() && (tag[i] == '=' || tag[i] == ' ')) ++i;
    if (i >= tag.size() || (tag[i] != '"' && tag[i] != '\'')) {
      attrs[key] = "";
      continue;
    }
    const char quote = tag[i++];
    const std::size_t val_begin = i;
    while (i < tag.size() && tag[i] != quote) ++i;
    attrs[key] = decode_entities(tag.substr(val_begin, i - val_begin));
    if (i < tag.size()) ++i;
  }
  return attrs;
}

std::string tag_name(std::string_view tag) {
  std::size_t i = 0;
  while (i < tag.size() && tag[i] != ' ' && tag[i] != '\t' &&
         tag[i] != '\n' && tag[i] != '\r' && tag[i] != '/')
    ++i;
  if (tag.substr(0, 1) == "/") {
    i = 1;
    while (i < tag.size() && tag[i] != ' ' && tag[i] != '\t') ++i;
    return std::string(tag.substr(0, i));
  }
  return std::string(tag.substr(0, i));
}

}  // namespace

GoldDocument read_timeml(std::string_view doc) {
  GoldDocument gold;
  const bool has_text_element = doc.find("<TEXT>") != std::string_view::npos ||
                                doc.find("<TEXT ") != std::string_view::npos;
  bool in_text = !has_text_element;
  bool in_docid = false;

  struct OpenTimex {
    std::map<std::string, std::string> attrs;
    std::size_t text_begin = 0;
    bool in_body = false;
    std::string raw_text;
  };
  std::optional<OpenTimex> open;

  auto close_timex = [&](OpenTimex& t) {
    GoldTimex g;
    const auto type_it = t.attrs.find("type");
    if (type_it == t.attrs.end())
      throw CorpusError("TIMEX3 without a type attribute");
    const auto type = parse_timex_type(type_it->second);
    if (!type) throw CorpusError("unknown TIMEX3 type " + type_it->second);
    g.type = *type;
    const auto value_it = t.attrs.find("value");
    if (value_it != t.attrs.end() && !value_it->second.empty())
      g.value = value_it->second;
    const auto func = t.attrs.find("functionInDocument");
    const bool is_dct =
        func != t.attrs.end() && func->second == "CREATION_TIME";
    if (t.in_body) {
      g.span = {static_cast<int>(t.text_begin),
                static_cast<int>(gold.text.size())};
      g.text = gold.text.substr(t.text_begin);
    } else {
      g.text = t.raw_text;
    }
    if (is_dct) {
      if (!g.value) throw CorpusError("creation-time TIMEX3 without a value");
      const std::string& v = *g.value;
      const auto anchor = parse_anchor(
          v.size() > 19 ? std::string_view(v).substr(0, 19) : v);
      if (!anchor)
        throw CorpusError("creation-time value is not a date: " + v);
      gold.anchor = *anchor;
      gold.dct = std::move(g);
      return true;
    }
    if (t.in_body) gold.timexes.push_back(std::move(g));
    return false;
  };

  bool anchor_seen = false;
  std::size_t i = 0;
  while (i < doc.size()) {
    if (doc[i] != '<') {
      std::string decoded;
      if (doc[i] == '&') {
        append_entity(doc, i, decoded);
      } else {
        decoded += doc[i++];
      }
      if (in_docid) gold.doc_id += decoded;
      if (open && !open->in_body) open->raw_text += decoded;
      if (in_text) gold.text += decoded;
      continue;
    }
    if (doc.compare(i, 4, "<!--") == 0) {
      const std::size_t end = doc.find("-->", i);
      if (end == std::string_view::npos)
        throw CorpusError("unterminated comment");
      i = end + 3;
      continue;
    }
    const std::size_t close = doc.find('>', i);
    if (close == std::string_view::npos)
      throw CorpusError("unterminated tag");
    const std::string_view tag = doc.substr(i + 1, close - i - 1);
    i = close + 1;
    if (tag.empty() || tag[0] == '?' || tag[0] == '!') continue;
    const std::string name = tag_name(tag);
    if (name == "TIMEX3") {
      if (open) throw CorpusError("nested TIMEX3");
      OpenTimex t;
      t.attrs = parse_attrs(tag);
      t.in_body = in_text;
      t.text_begin = gold.text.size();
      if (!tag.empty() && tag.back() == '/') {
        if (close_timex(t)) anchor_seen = true;
      } else {
        open = std::move(t);
      }
    } else if (name == "/TIMEX3") {
      if (!open) throw CorpusError("closing TIMEX3 without an opening");
      if (close_timex(*open)) anchor_seen = true;
      open.reset();
    } else if (name == "DOCID") {
      in_docid = true;
    } else if (name == "/DOCID") {
      in_docid = false;
    } else if (has_text_element && name == "TEXT") {
      in_text = true;
    } else if (has_text_element && name == "/TEXT") {
      in_text = false;
    }
  }
  if (open) throw CorpusError("unclosed TIMEX3");
  if (!anchor_seen)
    throw CorpusError("no TIMEX3 marked functionInDocument=CREATION_TIME");
  gold.doc_id = trim(gold.doc_id);
  return gold;
}

GoldDocument read_timeml_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  GoldDocument gold = read_timeml(buf.str());
  if (gold.doc_id.empty()) {
    // fall back to the file name without directories or extension
    std::string base = path;
    const std::size_t slash = base.find_last_of('/');
    if (slash != std::string::npos) base = base.substr(slash + 1);
    const std::size_t dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
    gold.doc_id = base;
  }
  return gold;
}

TabulatedDocument to_tabulated(const GoldDocument& gold, bool include_dct,
                               int* conflicts) {
  TabulatedDocument doc;
  doc.doc_id = gold.doc_id;
  doc.anchor = gold.anchor;
  doc.lang = gold.lang;

  int dropped = 0;
  if (include_dct && gold.dct) {
    const std::vector<Token> dct_tokens = tokenize(gold.dct->text);
    for (std::size_t k = 0; k < dct_tokens.size(); ++k) {
      doc.rows.push_back({dct_tokens[k].text,
                          {k == 0 ? 'B' : 'I', gold.dct->type},
                          gold.dct->value.value_or("-")});
    }
  }

  const std::vector<Token> tokens = tokenize(gold.text);
  std::vector<int> owner(tokens.size(), -1);
  for (std::size_t t = 0; t < gold.timexes.size(); ++t) {
    const CharSpan span = gold.timexes[t].span;
    bool got_any = false;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      const CharSpan tok{static_cast<int>(tokens[k].begin),
                         static_cast<int>(tokens[k].end)};
      if (!tok.overlaps(span)) continue;
      if (owner[k] != -1) continue;  // first timex wins
      owner[k] = static_cast<int>(t);
      got_any = true;
    }
    if (!got_any) ++dropped;
  }
  if (conflicts) *conflicts = dropped;

  int prev_owner = -1;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    TabRow row;
    row.token = tokens[k].text;
    if (owner[k] == -1) {
      row.tag = {'O', TimexType::Date};
      row.value = "-";
    } else {
      const GoldTimex& g = gold.timexes[static_cast<std::size_t>(owner[k])];
      row.tag = {owner[k] == prev_owner ? 'I' : 'B', g.type};
      row.value = g.value.value_or("-");
    }
    prev_owner = owner[k];
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

namespace {

struct Reader {
  std::istream& in;
  int line_no = 0;
  std::optional<std::string> pending;

  std::optional<std::string> next() {
    if (pending) {
      auto out = std::move(pending);
      pending.reset();
      return out;
    }
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  void push_back(std::string line) { pending = std::move(line); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw CorpusError("line " + std::to_string(line_no) + ": " + msg);
  }
};

// "# key = value" → (key, value)
std::optional<std::pair<std::string, std::string>> header_line(
    const std::string& line) {
  if (line.rfind("# ", 0) != 0) return std::nullopt;
  const std::size_t eq = line.find(" = ");
  if (eq == std::string::npos) return std::nullopt;
  return std::make_pair(line.substr(2, eq - 2), line.substr(eq + 3));
}

}  // namespace

std::vector<TabulatedDocument> read_tabulated(std::istream& in, bool repair) {
  std::vector<TabulatedDocument> docs;
  Reader r{in, 0, std::nullopt};
  while (true) {
    std::optional<std::string> line = r.next();
    while (line && trim(*line).empty()) line = r.next();
    if (!line) break;

    TabulatedDocument doc;
    bool have_id = false;
    bool have_anchor = false;
    while (line) {
      const auto header = header_line(*line);
      if (!header) break;
      const auto& [key, value] = *header;
      if (key == "doc_id") {
        doc.doc_id = value;
        have_id = true;
      } else if (key == "anchor") {
        const auto anchor = parse_anchor(value);
        if (!anchor) r.fail("bad anchor: " + value);
        doc.anchor = *anchor;
        have_anchor = true;
      } else if (key == "lang") {
        doc.lang = value;
      } else if (!repair) {
        r.fail("unknown header key: " + key);
      }
      line = r.next();
    }
    if (!have_id) r.fail("missing # doc_id header");
    if (!have_anchor) r.fail("missing # anchor header");

    BioTag prev{'O', TimexType::Date};
    std::string entity_value;
    while (line && !trim(*line).empty()) {
      const std::string& text = *line;
      const std::size_t t1 = text.find('\t');
      const std::size_t t2 =
          t1 == std::string::npos ? std::string::npos : text.find('\t', t1 + 1);
      if (t1 == std::string::npos || t2 == std::string::npos ||
          text.find('\t', t2 + 1) != std::string::npos)
        r.fail("expected 3 tab-separated columns");
      TabRow row;
      row.token = text.substr(0, t1);
      if (row.token.empty()) r.fail("empty token");
      const std::string tag_text = text.substr(t1 + 1, t2 - t1 - 1);
      try {
        row.tag = parse_bio(tag_text);
      } catch (const DetectError& e) {
        r.fail(e.what());
      }
      row.value = text.substr(t2 + 1);
      if (row.value.empty()) r.fail("empty value column");

      if (row.tag.prefix == 'I') {
        const bool follows =
            prev.prefix != 'O' && prev.type == row.tag.type;
        if (!follows && !repair)
          r.fail(format_bio(row.tag) + " does not continue an entity");
        if (follows && row.value != entity_value && !repair)
          r.fail("entity value changes from " + entity_value + " to " +
                 row.value);
      } else if (row.tag.prefix == 'B') {
        entity_value = row.value;
      } else if (row.value != "-" && !repair) {
        r.fail("O tokens take value -, got " + row.value);
      }
      prev = row.tag;
      doc.rows.push_back(std::move(row));
      line = r.next();
    }
    docs.push_back(std::move(doc));
    if (!line) break;
  }
  return docs;
}

std::vector<TabulatedDocument> read_tabulated_file(const std::string& path,
                                                   bool repair) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open " + path);
  try {
    return read_tabulated(in, repair);
  } catch (const CorpusError& e) {
    throw CorpusError(path + ": " + e.what());
  }
}

void write_tabulated(std::ostream& out, const TabulatedDocument& doc) {
  out << "# doc_id = " << doc.doc_id << "\n";
  out << "# anchor = " << format_anchor(doc.anchor) << "\n";
  if (!doc.lang.empty()) out << "# lang = " << doc.lang << "\n";
  for (const TabRow& row : doc.rows)
    out << row.token << '\t' << format_bio(row.tag) << '\t' << row.value
        << "\n";
  out << "\n";
}

void write_tabulated(std::ostream& out,
                     const std::vector<TabulatedDocument>& docs) {
  for (const TabulatedDocument& doc : docs) write_tabulated(out, doc);
}

std::string write_tabulated(const std::vector<TabulatedDocument>& docs) {
  std::ostringstream out;
  write_tabulated(out, docs);
  return out.str();
}

std::vector<Timex> tabulated_timexes(const TabulatedDocument& doc) {
  std::vector<BioTag> tags;
  std::vector<std::string> texts;
  tags.reserve(doc.rows.size());
  texts.reserve(doc.rows.size());
  for (const TabRow& row : doc.rows) {
    tags.push_back(row.tag);
    texts.push_back(row.token);
  }
  // byte offset of each token inside the space-joined text
  std::vector<int> offset(texts.size() + 1, 0);
  int at = 0;
  for (std::size_t k = 0; k < texts.size(); ++k) {
    offset[k] = at;
    at += static_cast<int>(texts[k].size());
    if (k + 1 < texts.size()) ++at;  // joining space
  }
  offset[texts.size()] = at;

  std::vector<Timex> out;
  for (const Detection& d : decode_spans(tags)) {
    Timex t;
    t.token_span = d.span;
    t.type = d.type;
    const std::size_t b = static_cast<std::size_t>(d.span.begin);
    const std::size_t e = static_cast<std::size_t>(d.span.end);
    t.span = {offset[b], offset[e - 1] + static_cast<int>(texts[e - 1].size())};
    std::string joined;
    for (std::size_t k = b; k < e; ++k) {
      if (k > b) joined += ' ';
      joined += texts[k];
    }
    t.text = std::move(joined);
    const std::string& v = doc.rows[b].value;
    if (v != "-") t.value = v;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace timextk
