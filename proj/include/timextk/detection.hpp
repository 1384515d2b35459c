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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "timextk/token.hpp"
#include "timextk/types.hpp"

namespace timextk {

struct DetectError : std::runtime_error {
  explicit DetectError(const std::string& msg) : std::runtime_error(msg) {}
};

// One BIO tag: "O", or prefix-type like "B-DATE" and "I-DURATION".
struct BioTag {
  char prefix = 'O';  // 'B', 'I' or 'O'
  TimexType type = TimexType::Date;

  bool operator==(const BioTag&) const = default;
};

BioTag parse_bio(std::string_view text);  // throws DetectError
std::string format_bio(const BioTag& tag);

// A detected extent before normalization.
struct Detection {
  TokenSpan span;
  TimexType type = TimexType::Date;

  bool operator==(const Detection&) const = default;
};

// Decodes a BIO sequence into extents. Orphan I tags (no open extent, or
// a type switch mid-extent) are repaired into B; `repairs`, when given,
// receives how many tags needed that.
std::vector<Detection> decode_spans(const std::vector<BioTag>& tags,
                                    int* repairs = nullptr);
std::vector<Detection> decode_spans(const std::vector<std::string>& tags,
                                    int* repairs = nullptr);

// Inverse of decode_spans for well-formed, non-overlapping extents.
std::vector<BioTag> encode_spans(std::size_t token_count,
                                 const std::vector<Detection>& spans);

// A surface pattern: token sequence matched against folded token text.
// Wildcards: <NUM> any numeric token, <NUM4> a four-digit numeric token,
// <ORD> an ordinal suffix token (st, nd, rd, th, º, ª).
struct LexiconPattern {
  std::vector<std::string> tokens;
  TimexType type = TimexType::Date;
};

struct Lexicon {
  std::vector<LexiconPattern> patterns;
};

// One pattern per line: PATTERN<TAB>TYPE. '#' starts a comment.
Lexicon load_lexicon(std::istream& in);  // throws DetectError
Lexicon load_lexicon_file(const std::string& path);

// Greedy left-to-right longest-match scan. Matches never overlap.
std::vector<Detection> baseline_detect(const std::vector<Token>& tokens,
                                       const Lexicon& lexicon);

}  // namespace timextk
