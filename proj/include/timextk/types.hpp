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

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

#include "timextk/calendar.hpp"

namespace timextk {

enum class TimexType { Date, Time, Duration, Set };

std::string to_string(TimexType t);
std::optional<TimexType> parse_timex_type(std::string_view s);

// Half-open [begin, end) token index range.
struct TokenSpan {
  int begin = 0;
  int end = 0;

  auto operator<=>(const TokenSpan&) const = default;
  bool overlaps(const TokenSpan& o) const {
    return begin < o.end && o.begin < end;
  }
};

// Half-open [begin, end) byte offset range into the document text.
struct CharSpan {
  int begin = 0;
  int end = 0;

  auto operator<=>(const CharSpan&) const = default;
  bool overlaps(const CharSpan& o) const {
    return begin < o.end && o.begin < end;
  }
};

// Document creation time every deictic expression is resolved against.
struct Anchor {
  CivilDate date;
  std::optional<ClockTime> time;

  Instant instant() const { return instant_from(date, time.value_or(ClockTime{})); }
  bool operator==(const Anchor&) const = default;
};

// Accepts YYYY-MM-DD or YYYY-MM-DDTHH:MM[:SS].
std::optional<Anchor> parse_anchor(std::string_view s);
std::string format_anchor(const Anchor& a);

// One temporal expression occurrence inside a document. `value` is unset
// until normalization assigns one; detection-only timexes stay unset.
// Both coordinate systems refer to the tokenized document: `token_span`
// indexes tokens, `span` indexes bytes of the space-joined token text.
struct Timex {
  TokenSpan token_span;
  CharSpan span;
  std::string text;
  TimexType type = TimexType::Date;
  std::optional<std::string> value;

  bool operator==(const Timex&) const = default;
};

}  // namespace timextk
