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

#include "timextk/value.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <vector>

namespace timextk {

namespace {

std::string upper_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool is_digit_or_x(char c) { return (c >= '0' && c <= '9') || c == 'X'; }

bool has_x(std::string_view s) { return s.find('X') != std::string_view::npos; }

// Period component slots in canonical emission order. Index 7 starts the
// time side.
constexpr std::array<std::string_view, 10> kPeriodUnits = {
    "CE", "DE", "Y", "Q", "M", "W", "D", "H", "M", "S"};

constexpr std::array<Granularity, 10> kPeriodGranularity = {
    Granularity::Century, Granularity::Decade, Granularity::Year,
    Granularity::Quarter, Granularity::Month,  Granularity::Week,
    Granularity::Day,     Granularity::Hour,   Granularity::Minute,
    Granularity::Second};

struct PeriodParts {
  // amount[i] unset when the component is absent; "X"-containing amounts
  // stay verbatim.
  std::array<std::optional<std::string>, 10> amount;
  bool any() const {
    for (const auto& a : amount)
      if (a) return true;
    return false;
  }
};

bool parse_period(std::string_view up, PeriodParts& parts) {
  if (up.size() < 2 || up[0] != 'P') return false;
  std::size_t i = 1;
  bool time_side = false;
  int last_slot = -1;
  bool saw_time_component = false;
  while (i < up.size()) {
    if (!time_side && up[i] == 'T') {
      time_side = true;
      ++i;
      if (i == up.size()) return false;
      continue;
    }
    std::size_t start = i;
    while (i < up.size() && is_digit_or_x(up[i])) ++i;
    if (i == start || i == up.size()) return false;
    std::string amount(up.substr(start, i - start));
    int slot = -1;
    if (!time_side) {
      if (up.compare(i, 2, "CE") == 0) {
        slot = 0;
        i += 2;
      } else if (up.compare(i, 2, "DE") == 0) {
        slot = 1;
        i += 2;
      } else {
        switch (up[i]) {
          case 'Y': slot = 2; break;
          case 'Q': slot = 3; break;
          case 'M': slot = 4; break;
          case 'W': slot = 5; break;
          case 'D': slot = 6; break;
          default: return false;
        }
        ++i;
      }
    } else {
      switch (up[i]) {
        case 'H': slot = 7; break;
        case 'M': slot = 8; break;
        case 'S': slot = 9; break;
        default: return false;
      }
      ++i;
      saw_time_component = true;
    }
    if (slot <= last_slot) return false;
    last_slot = slot;
    parts.amount[static_cast<std::size_t>(slot)] = std::move(amount);
  }
  if (time_side && !saw_time_component) return false;
  return parts.any();
}

struct DateParts {
  std::string head;  // 2 (century), 3 (decade) or 4 (year) chars
  std::optional<char> quarter;        // '1'..'4' or 'X'
  std::optional<std::string> season;  // SP SU FA WI
  std::optional<std::string> week;    // two digit-or-X chars
  std::optional<std::string> month, day;
  std::optional<std::string> pod;  // MO MD MI AF EV NI DT
  std::optional<std::string> hour, minute, second;
};

bool take_digits(std::string_view s, std::size_t& i, std::size_t n,
                 std::string& out) {
  if (i + n > s.size()) return false;
  for (std::size_t k = 0; k < n; ++k)
    if (!is_digit_or_x(s[i + k])) return false;
  out = std::string(s.substr(i, n));
  i += n;
  return true;
}

bool parse_datetime(std::string_view up, DateParts& parts) {
  std::size_t i = 0;
  while (i < up.size() && is_digit_or_x(up[i])) ++i;
  if (i < 2 || i > 4) return false;
  parts.head = std::string(up.substr(0, i));
  if (parts.head.size() < 4) return i == up.size();
  if (i == up.size()) return true;
  if (up[i] != '-') return false;
  ++i;
  if (i == up.size()) return false;
  if (up[i] == 'Q') {
    ++i;
    if (i + 1 != up.size()) return false;
    char q = up[i];
    if (q != 'X' && (q < '1' || q > '4')) return false;
    parts.quarter = q;
    return true;
  }
  if (up.compare(i, 2, "SP") == 0 || up.compare(i, 2, "SU") == 0 ||
      up.compare(i, 2, "FA") == 0 || up.compare(i, 2, "WI") == 0) {
    parts.season = std::string(up.substr(i, 2));
    return i + 2 == up.size();
  }
  if (up[i] == 'W') {
    ++i;
    std::string w;
    if (!take_digits(up, i, 2, w)) return false;
    parts.week = w;
    return i == up.size();
  }
  std::string month;
  if (!take_digits(up, i, 2, month)) return false;
  parts.month = month;
  if (i == up.size()) return true;
  if (up[i] != '-') return false;
  ++i;
  std::string day;
  if (!take_digits(up, i, 2, day)) return false;
  parts.day = day;
  if (i == up.size()) return true;
  if (up[i] != 'T') return false;
  ++i;
  if (i == up.size()) return false;
  if (up[i] >= 'A' && up[i] <= 'Z') {
    const std::string_view code = up.substr(i);
    for (std::string_view known : {"MO", "MD", "MI", "AF", "EV", "NI", "DT"}) {
      if (code == known) {
        parts.pod = std::string(known);
        return true;
      }
    }
    return false;
  }
  std::string hour;
  if (!take_digits(up, i, 2, hour)) return false;
  parts.hour = hour;
  if (i == up.size()) return true;
  if (up[i] != ':') return false;
  ++i;
  std::string minute;
  if (!take_digits(up, i, 2, minute)) return false;
  parts.minute = minute;
  if (i == up.size()) return true;
  if (up[i] != ':') return false;
  ++i;
  std::string second;
  if (!take_digits(up, i, 2, second)) return false;
  parts.second = second;
  return i == up.size();
}

ValueInfo classify_datetime(const std::string& raw, const DateParts& p) {
  ValueInfo info;
  info.raw = raw;
  info.well_formed = true;
  bool x = has_x(p.head);
  if (p.head.size() == 2) {
    info.granularity = Granularity::Century;
  } else if (p.head.size() == 3) {
    info.granularity = Granularity::Decade;
  } else {
    info.granularity = Granularity::Year;
  }
  if (p.quarter) {
    info.granularity = Granularity::Quarter;
    x = x || *p.quarter == 'X';
  }
  if (p.season) info.granularity = Granularity::Quarter;
  if (p.week) {
    info.granularity = Granularity::Week;
    x = x || has_x(*p.week);
  }
  if (p.month) {
    info.granularity = Granularity::Month;
    x = x || has_x(*p.month);
  }
  if (p.day) {
    info.granularity = Granularity::Day;
    x = x || has_x(*p.day);
  }
  info.shape = ValueShape::Date;
  if (p.pod) {
    info.granularity = Granularity::PartOfDay;
    info.shape = ValueShape::Time;
  }
  if (p.hour) {
    info.granularity = Granularity::Hour;
    info.shape = ValueShape::Time;
    x = x || has_x(*p.hour);
  }
  if (p.minute) {
    info.granularity = Granularity::Minute;
    x = x || has_x(*p.minute);
  }
  if (p.second) {
    info.granularity = Granularity::Second;
    x = x || has_x(*p.second);
  }
  info.underspecified = x;
  return info;
}

}  // namespace

std::string to_string(ValueShape s) {
  switch (s) {
    case ValueShape::Date: return "DATE";
    case ValueShape::Time: return "TIME";
    case ValueShape::Period: return "PERIOD";
    case ValueShape::Ref: return "REF";
  }
  return "DATE";
}

std::string to_string(Granularity g) {
  switch (g) {
    case Granularity::Century: return "century";
    case Granularity::Decade: return "decade";
    case Granularity::Year: return "year";
    case Granularity::Quarter: return "quarter";
    case Granularity::Month: return "month";
    case Granularity::Week: return "week";
    case Granularity::Day: return "day";
    case Granularity::PartOfDay: return "part-of-day";
    case Granularity::Hour: return "hour";
    case Granularity::Minute: return "minute";
    case Granularity::Second: return "second";
    case Granularity::Unspecified: return "unspecified";
  }
  return "unspecified";
}

ValueInfo classify_value(std::string_view raw) {
  const std::string up = upper_ascii(raw);
  ValueInfo info;
  info.raw = up;

  // The three REFs are checked before the period branch: they start with
  // letters that would otherwise be misread ("PRESENT_REF" starts with P).
  if (up == "PAST_REF" || up == "PRESENT_REF" || up == "FUTURE_REF") {
    info.shape = ValueShape::Ref;
    info.granularity = Granularity::Unspecified;
    info.underspecified = false;
    info.well_formed = true;
    return info;
  }
  if (!up.empty() && up[0] == 'P') {
    PeriodParts parts;
    if (parse_period(up, parts)) {
      info.shape = ValueShape::Period;
      info.well_formed = true;
      info.underspecified = false;
      for (std::size_t i = 0; i < parts.amount.size(); ++i) {
        if (!parts.amount[i]) continue;
        info.granularity = kPeriodGranularity[i];
        if (has_x(*parts.amount[i])) info.underspecified = true;
      }
      return info;
    }
    info.shape = ValueShape::Period;
    info.granularity = Granularity::Unspecified;
    info.underspecified = true;
    info.well_formed = false;
    return info;
  }
  DateParts parts;
  if (parse_datetime(up, parts)) return classify_datetime(up, parts);
  info.shape = ValueShape::Date;
  info.granularity = Granularity::Unspecified;
  info.underspecified = true;
  info.well_formed = false;
  return info;
}

std::string canonicalize_value(std::string_view raw) {
  const std::string up = upper_ascii(raw);
  if (up.empty() || up[0] != 'P') return up;
  if (up == "PAST_REF" || up == "PRESENT_REF") return up;
  PeriodParts parts;
  if (!parse_period(up, parts)) return up;

  auto numeric = [](const std::optional<std::string>& a)
      -> std::optional<std::int64_t> {
    if (!a || has_x(*a)) return std::nullopt;
    std::int64_t v = 0;
    for (char c : *a) {
      v = v * 10 + (c - '0');
      if (v > 1000000000) return std::nullopt;  // keep absurd amounts verbatim
    }
    return v;
  };

  // Fold centuries/decades into years and quarters into months, but only
  // when every present slot in the group is numeric; X amounts stay in
  // their own slot so the rewrite is idempotent.
  std::array<std::optional<std::string>, 10> out = parts.amount;
  const auto ce = numeric(parts.amount[0]);
  const auto de = numeric(parts.amount[1]);
  const auto y = numeric(parts.amount[2]);
  const bool years_foldable = (!parts.amount[0] || ce.has_value()) &&
                              (!parts.amount[1] || de.has_value()) &&
                              (!parts.amount[2] || y.has_value()) &&
                              (parts.amount[0] || parts.amount[1]);
  if (years_foldable) {
    const std::int64_t total =
        ce.value_or(0) * 100 + de.value_or(0) * 10 + y.value_or(0);
    out[0].reset();
    out[1].reset();
    out[2] = std::to_string(total);
  }
  const auto q = numeric(parts.amount[3]);
  const auto m = numeric(parts.amount[4]);
  const bool months_foldable = (!parts.amount[3] || q.has_value()) &&
                               (!parts.amount[4] || m.has_value()) &&
                               parts.amount[3].has_value();
  if (months_foldable) {
    const std::int64_t total = q.value_or(0) * 3 + m.value_or(0);
    out[3].reset();
    out[4] = std::to_string(total);
  }
  // Re-render numeric amounts to strip leading zeros.
  for (auto& a : out) {
    if (!a) continue;
    if (auto v = numeric(a)) a = std::to_string(*v);
  }
  // Drop zero components; if everything is zero keep only the finest one.
  int finest = -1;
  bool any_nonzero = false;
  for (int i = 0; i < 10; ++i) {
    if (!out[static_cast<std::size_t>(i)]) continue;
    finest = i;
    if (*out[static_cast<std::size_t>(i)] != "0") any_nonzero = true;
  }
  std::string result = "P";
  bool t_written = false;
  for (int i = 0; i < 10; ++i) {
    const auto& a = out[static_cast<std::size_t>(i)];
    if (!a) continue;
    if (*a == "0" && (any_nonzero || i != finest)) continue;
    if (i >= 7 && !t_written) {
      result += 'T';
      t_written = true;
    }
    result += *a;
    result += kPeriodUnits[static_cast<std::size_t>(i)];
  }
  if (result == "P") return up;  // every slot folded away; keep the input
  return result;
}

bool values_equivalent(std::string_view a, std::string_view b) {
  return canonicalize_value(a) == canonicalize_value(b);
}

}  // namespace timextk
