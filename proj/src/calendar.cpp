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

#include "timextk/calendar.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace timextk {

bool is_leap_year(int year) {
  return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

int days_in_month(int year, int month) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) return 0;
  if (month == 2 && is_leap_year(year)) return 29;
  return kDays[static_cast<std::size_t>(month - 1)];
}

bool valid_civil(const CivilDate& d) {
  return d.month >= 1 && d.month <= 12 && d.day >= 1 &&
         d.day <= days_in_month(d.year, d.month);
}

bool valid_clock(const ClockTime& t) {
  return t.hour >= 0 && t.hour < 24 && t.minute >= 0 && t.minute < 60 &&
         t.second >= 0 && t.second < 60;
}

std::int64_t days_from_civil(const CivilDate& d) {
  std::int64_t y = d.year;
  const int m = d.month;
  const int dd = d.day;
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + dd - 1);
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned dd = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : static_cast<unsigned>(-9));
  return {static_cast<int>(y + (m <= 2)), static_cast<int>(m),
          static_cast<int>(dd)};
}

int weekday_of(std::int64_t serial_day) {
  // 1970-01-01 was a Thursday (ISO weekday 4).
  std::int64_t w = (serial_day + 3) % 7;
  if (w < 0) w += 7;
  return static_cast<int>(w) + 1;
}

IsoWeek iso_week_of(std::int64_t serial_day) {
  // The ISO week of a day is the week containing its Thursday.
  const std::int64_t thursday = serial_day - (weekday_of(serial_day) - 4);
  const CivilDate th = civil_from_days(thursday);
  const std::int64_t jan1 = days_from_civil({th.year, 1, 1});
  const int week = static_cast<int>((thursday - jan1) / 7) + 1;
  return {th.year, week};
}

std::int64_t iso_week_start(int iso_year, int week) {
  // Week 1 contains January 4th.
  const std::int64_t jan4 = days_from_civil({iso_year, 1, 4});
  const std::int64_t week1_monday = jan4 - (weekday_of(jan4) - 1);
  return week1_monday + static_cast<std::int64_t>(week - 1) * 7;
}

Instant instant_from(const CivilDate& d, const ClockTime& t) {
  return {days_from_civil(d), t.hour * 3600 + t.minute * 60 + t.second};
}

Instant instant_add_seconds(const Instant& t, std::int64_t seconds) {
  std::int64_t total = t.sec + seconds;
  std::int64_t day = t.day + total / 86400;
  std::int64_t sec = total % 86400;
  if (sec < 0) {
    sec += 86400;
    day -= 1;
  }
  return {day, static_cast<std::int32_t>(sec)};
}

Instant instant_add_months(const Instant& t, std::int64_t months) {
  const CivilDate d = civil_from_days(t.day);
  std::int64_t linear = static_cast<std::int64_t>(d.year) * 12 + (d.month - 1) + months;
  std::int64_t year = linear / 12;
  int month = static_cast<int>(linear % 12);
  if (month < 0) {
    month += 12;
    year -= 1;
  }
  month += 1;
  const int yi = static_cast<int>(year);
  const int day = std::min(d.day, days_in_month(yi, month));
  return {days_from_civil({yi, month, day}), t.sec};
}

std::string format_date(const CivilDate& d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

std::string format_instant(const Instant& t) {
  const CivilDate d = civil_from_days(t.day);
  const int h = t.sec / 3600;
  const int m = (t.sec / 60) % 60;
  const int s = t.sec % 60;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", d.year,
                d.month, d.day, h, m, s);
  return buf;
}

std::optional<CivilDate> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
  }
  auto num = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = 0; i < len; ++i) v = v * 10 + (s[pos + i] - '0');
    return v;
  };
  const CivilDate d{num(0, 4), num(5, 2), num(8, 2)};
  if (!valid_civil(d)) return std::nullopt;
  return d;
}

}  // namespace timextk
