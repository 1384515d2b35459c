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

#include "timextk/types.hpp"

#include <algorithm>
#include <cstdio>

namespace timextk {

std::string to_string(TimexType t) {
  switch (t) {
    case TimexType::Date:
      return "DATE";
    case TimexType::Time:
      return "TIME";
    case TimexType::Duration:
      return "DURATION";
    case TimexType::Set:
      return "SET";
  }
  return "DATE";
}

std::optional<TimexType> parse_timex_type(std::string_view s) {
  if (s == "DATE") return TimexType::Date;
  if (s == "TIME") return TimexType::Time;
  if (s == "DURATION") return TimexType::Duration;
  if (s == "SET") return TimexType::Set;
  return std::nullopt;
}

std::optional<Anchor> parse_anchor(std::string_view s) {
  std::string_view date_part = s.substr(0, std::min<std::size_t>(10, s.size()));
  auto date = parse_date(date_part);
  if (!date) return std::nullopt;
  if (s.size() == 10) return Anchor{*date, std::nullopt};
  if (s.size() != 16 && s.size() != 19) return std::nullopt;
  if (s[10] != 'T' || s[13] != ':') return std::nullopt;
  if (s.size() == 19 && s[16] != ':') return std::nullopt;
  auto num2 = [&](std::size_t pos) -> int {
    if (s[pos] < '0' || s[pos] > '9' || s[pos + 1] < '0' || s[pos + 1] > '9')
      return -1;
    return (s[pos] - '0') * 10 + (s[pos + 1] - '0');
  };
  ClockTime t;
  t.hour = num2(11);
  t.minute = num2(14);
  t.second = s.size() == 19 ? num2(17) : 0;
  if (!valid_clock(t)) return std::nullopt;
  return Anchor{*date, t};
}

std::string format_anchor(const Anchor& a) {
  if (!a.time) return format_date(a.date);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02d",
                format_date(a.date).c_str(), a.time->hour, a.time->minute,
                a.time->second);
  return buf;
}

}  // namespace timextk
