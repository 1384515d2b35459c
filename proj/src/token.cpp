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

#include "timextk/token.hpp"

namespace timextk {

namespace {

enum class CharClass { Space, Digit, Letter, Punct };

CharClass classify(unsigned char c) {
  if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
      c == '\v')
    return CharClass::Space;
  if (c >= '0' && c <= '9') return CharClass::Digit;
  if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return CharClass::Letter;
  if (c >= 0x80) return CharClass::Letter;  // multibyte sequences stay whole
  return CharClass::Punct;
}

std::optional<std::int64_t> numeric_of(std::string_view text) {
  if (text.empty() || text.size() > 18) return std::nullopt;
  std::int64_t v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const CharClass cls = classify(static_cast<unsigned char>(text[i]));
    if (cls == CharClass::Space) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (cls != CharClass::Punct) {
      while (j < text.size() &&
             classify(static_cast<unsigned char>(text[j])) == cls)
        ++j;
    }
    Token t;
    t.text = std::string(text.substr(i, j - i));
    t.begin = static_cast<int>(i);
    t.end = static_cast<int>(j);
    t.numeric = numeric_of(t.text);
    out.push_back(std::move(t));
    i = j;
  }
  return out;
}

std::string fold_token(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  std::size_t i = 0;
  while (i < token.size()) {
    const unsigned char c = static_cast<unsigned char>(token[i]);
    if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<char>(c + 0x20));
      ++i;
      continue;
    }
    // Latin-1 supplement uppercase letters are 0xC3 0x80..0x9E in UTF-8
    // (except 0x97, the multiplication sign); lowercase is +0x20.
    if (c == 0xC3 && i + 1 < token.size()) {
      const unsigned char d = static_cast<unsigned char>(token[i + 1]);
      if (d >= 0x80 && d <= 0x9E && d != 0x97) {
        out.push_back(static_cast<char>(0xC3));
        out.push_back(static_cast<char>(d + 0x20));
        i += 2;
        continue;
      }
    }
    out.push_back(token[i]);
    ++i;
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> token_texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

}  // namespace timextk
