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
#include <cstdint>
#include <optional>
#include <string>

namespace timextk {

// Proleptic Gregorian calendar date. No timezone handling anywhere in the
// toolkit: document anchors are naive local timestamps.
struct CivilDate {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..days_in_month

  auto operator<=>(const CivilDate&) const = default;
};

struct ClockTime {
  int hour = 0;    // 0..23
  int minute = 0;  // 0..59
  int second = 0;  // 0..59

  auto operator<=>(const ClockTime&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool valid_civil(const CivilDate& d);
bool valid_clock(const ClockTime& t);

// Days relative to 1970-01-01 (Howard Hinnant's civil_from_days family).
std::int64_t days_from_civil(const CivilDate& d);
CivilDate civil_from_days(std::int64_t z);

// ISO weekday: 1 = Monday .. 7 = Sunday.
int weekday_of(std::int64_t serial_day);

struct IsoWeek {
  int year = 0;  // ISO week-numbering year, may differ from civil year
  int week = 0;  // 1..53
};

IsoWeek iso_week_of(std::int64_t serial_day);
std::int64_t iso_week_start(int iso_year, int week);

// Second-resolution point in time. `sec` is the offset within `day`,
// always in [0, 86400).
struct Instant {
  std::int64_t day = 0;
  std::int32_t sec = 0;

  auto operator<=>(const Instant&) const = default;

  std::int64_t total_seconds() const { return day * 86400 + sec; }
};

Instant instant_from(const CivilDate& d, const ClockTime& t = {});
Instant instant_add_seconds(const Instant& t, std::int64_t seconds);

// Shifts by whole months with end-of-month clamping: Jan 31 + 1 month is
// Feb 28 (or 29). The time of day is preserved.
Instant instant_add_months(const Instant& t, std::int64_t months);

std::string format_date(const CivilDate& d);              // YYYY-MM-DD
std::string format_instant(const Instant& t);             // YYYY-MM-DDTHH:MM:SS
std::optional<CivilDate> parse_date(std::string_view s);  // strict YYYY-MM-DD

}  // namespace timextk
