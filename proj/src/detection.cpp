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

#include "timextk/detection.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace timextk {

BioTag parse_bio(std::string_view text) {
  if (text == "O") return {'O', TimexType::Date};
  if (text.size() < 3 || text[1] != '-' || (text[0] != 'B' && text[0] != 'I'))
    throw DetectError("bad BIO tag: " + std::string(text));
  const auto type = parse_timex_type(text.substr(2));
  if (!type) throw DetectError("bad BIO tag type: " + std::string(text));
  return {text[0], *type};
}

std::string format_bio(const BioTag& tag) {
  if (tag.prefix == 'O') return "O";
  return std::string(1, tag.prefix) + "-" + to_string(tag.type);
}

std::vector<Detection> decode_spans(const std::vector<BioTag>& tags,
                                    int* repairs) {
  std::vector<Detection> out;
  int repaired = 0;
  bool open = false;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const BioTag& t = tags[i];
    if (t.prefix == 'O') {
      open = false;
      continue;
    }
    const int pos = static_cast<int>(i);
    if (t.prefix == 'I' && open && out.back().type == t.type) {
      out.back().span.end = pos + 1;
      continue;
    }
    if (t.prefix == 'I') ++repaired;
    out.push_back({{pos, pos + 1}, t.type});
    open = true;
  }
  if (repairs) *repairs = repaired;
  return out;
}

std::vector<Detection> decode_spans(const std::vector<std::string>& tags,
                                    int* repairs) {
  std::vector<BioTag> parsed;
  parsed.reserve(tags.size());
  for (const std::string& t : tags) parsed.push_back(parse_bio(t));
  return decode_spans(parsed, repairs);
}

std::vector<BioTag> encode_spans(std::size_t token_count,
                                 const std::vector<Detection>& spans) {
  std::vector<BioTag> out(token_count, BioTag{'O', TimexType::Date});
  for (const Detection& d : spans) {
    if (d.span.begin < 0 || d.span.begin >= d.span.end ||
        static_cast<std::size_t>(d.span.end) > token_count)
      throw DetectError("extent out of range");
    for (int i = d.span.begin; i < d.span.end; ++i) {
      if (out[static_cast<std::size_t>(i)].prefix != 'O')
        throw DetectError("overlapping extents");
      out[static_cast<std::size_t>(i)] = {i == d.span.begin ? 'B' : 'I',
                                          d.type};
    }
  }
  return out;
}

namespace {

bool is_ordinal_suffix(const std::string& folded) {
  static const std::vector<std::string> kSuffixes = {"st", "nd", "rd",
                                                     "th", "º", "ª"};
  return std::find(kSuffixes.begin(), kSuffixes.end(), folded) !=
         kSuffixes.end();
}

bool wildcard_matches(const std::string& pattern, const Token& token,
                      const std::string& folded) {
  if (pattern == "<NUM>") return token.numeric.has_value();
  if (pattern == "<NUM4>")
    return token.numeric.has_value() && token.text.size() == 4;
  if (pattern == "<ORD>") return is_ordinal_suffix(folded);
  return pattern == folded;
}

}  // namespace

Lexicon load_lexicon(std::istream& in) {
  Lexicon lex;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t tab = line.find('\t');
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (tab == std::string::npos)
      throw DetectError("line " + std::to_string(line_no) +
                        ": expected PATTERN<TAB>TYPE");
    const std::string pattern_text = line.substr(0, tab);
    std::string type_text = line.substr(tab + 1);
    while (!type_text.empty() && (type_text.back() == ' ' || type_text.back() == '\t'))
      type_text.pop_back();
    const auto type = parse_timex_type(type_text);
    if (!type)
      throw DetectError("line " + std::to_string(line_no) + ": bad type " +
                        type_text);
    LexiconPattern p;
    p.type = *type;
    std::istringstream words(pattern_text);
    std::string word;
    while (words >> word) {
      if (word.rfind("<", 0) == 0) {
        if (word != "<NUM>" && word != "<NUM4>" && word != "<ORD>")
          throw DetectError("line " + std::to_string(line_no) +
                            ": unknown wildcard " + word);
        p.tokens.push_back(word);
      } else {
        p.tokens.push_back(fold_token(word));
      }
    }
    if (p.tokens.empty())
      throw DetectError("line " + std::to_string(line_no) + ": empty pattern");
    lex.patterns.push_back(std::move(p));
  }
  return lex;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DetectError("cannot open " + path);
  return load_lexicon(in);
}

std::vector<Detection> baseline_detect(const std::vector<Token>& tokens,
                                       const Lexicon& lexicon) {
  std::vector<std::string> folded;
  folded.reserve(tokens.size());
  for (const Token& t : tokens) folded.push_back(fold_token(t.text));

  std::vector<Detection> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t best_len = 0;
    TimexType best_type = TimexType::Date;
    for (const LexiconPattern& p : lexicon.patterns) {
      if (p.tokens.size() <= best_len) continue;
      if (i + p.tokens.size() > tokens.size()) continue;
      bool all = true;
      for (std::size_t k = 0; k < p.tokens.size(); ++k) {
        if (!wildcard_matches(p.tokens[k], tokens[i + k], folded[i + k])) {
          all = false;
          break;
        }
      }
      if (all) {
        best_len = p.tokens.size();
        best_type = p.type;
      }
    }
    if (best_len == 0) {
      ++i;
      continue;
    }
    out.push_back({{static_cast<int>(i), static_cast<int>(i + best_len)},
                   best_type});
    i += best_len;
  }
  return out;
}

}  // namespace timextk
