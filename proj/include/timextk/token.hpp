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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace timextk {

struct Token {
  std::string text;
  int begin = 0;  // byte offset into the original text
  int end = 0;
  // Set when the token is all ASCII digits and fits into 64 bits.
  std::optional<std::int64_t> numeric;

  bool operator==(const Token&) const = default;
};

// Splits on whitespace, gives every ASCII punctuation character its own
// token, and splits at digit/letter boundaries: "2000/07/14" yields five
// tokens, "90s" yields two. Bytes >= 0x80 count as letters, so accented
// words stay whole. Case is preserved.
std::vector<Token> tokenize(std::string_view text);

// Case-folds ASCII and the Latin-1 supplement letters in UTF-8 input.
// Used for literal matching; accents are not stripped.
std::string fold_token(std::string_view token);

// The canonical detokenization used for span arithmetic over tabulated
// documents: tokens joined by single spaces.
std::string join_tokens(const std::vector<std::string>& tokens);

std::vector<std::string> token_texts(const std::vector<Token>& tokens);

}  // namespace timextk
