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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "timextk/calendar.hpp"

using namespace timextk;

namespace {

// Day-at-a-time counting oracle for the serial-day conversion.
std::int64_t walk_days(const CivilDate& target) {
  std::int64_t serial = 0;
  CivilDate d{1970, 1, 1};
  while (d < target) {
    ++d.day;
    if (d.day > days_in_month(d.year, d.month)) {
      d.day = 1;
      if (++d.month > 12) {
        d.month = 1;
        ++d.year;
      }
    }
    ++serial;
  }
  while (target < d) {
    --d.day;
    if (d.day < 1) {
      if (--d.month < 1) {
        d.month = 12;
        --d.year;
      }
      d.day = days_in_month(d.year, d.month);
    }
    --serial;
  }
  return serial;
}

}  // namespace

TEST_CASE("leap year rule") {
  CHECK(is_leap_year(2000));
  CHECK(is_leap_year(2012));
  CHECK(is_leap_year(1996));
  CHECK_FALSE(is_leap_year(1900));
  CHECK_FALSE(is_leap_year(2100));
  CHECK_FALSE(is_leap_year(2013));
  CHECK_FALSE(is_leap_year(2001));
}

TEST_CASE("month lengths") {
  CHECK(days_in_month(2013, 1) == 31);
  CHECK(days_in_month(2013, 2) == 28);
  CHECK(days_in_month(2012, 2) == 29);
  CHECK(days_in_month(2013, 4) == 30);
  CHECK(days_in_month(2013, 12) == 31);
}

TEST_CASE("validation") {
  CHECK(valid_civil({2013, 4, 10}));
  CHECK(valid_civil({2012, 2, 29}));
  CHECK_FALSE(valid_civil({2013, 2, 29}));
  CHECK_FALSE(valid_civil({2013, 13, 1}));
  CHECK_FALSE(valid_civil({2013, 0, 1}));
  CHECK_FALSE(valid_civil({2013, 4, 31}));
  CHECK(valid_clock({23, 59, 59}));
  CHECK(valid_clock({0, 0, 0}));
  CHECK_FALSE(valid_clock({24, 0, 0}));
  CHECK_FALSE(valid_clock({12, 60, 0}));
  CHECK_FALSE(valid_clock({12, 0, -1}));
}

TEST_CASE("serial day epoch and known values") {
  CHECK(days_from_civil({1970, 1, 1}) == 0);
  CHECK(days_from_civil({1970, 1, 2}) == 1);
  CHECK(days_from_civil({1969, 12, 31}) == -1);
  CHECK(days_from_civil({2000, 3, 1}) == 11017);
  CHECK(civil_from_days(0) == CivilDate{1970, 1, 1});
}

TEST_CASE("serial day matches the counting oracle") {
  const CivilDate samples[] = {
      {1970, 1, 1},  {1970, 3, 1},   {1972, 2, 29}, {1999, 12, 31},
      {2000, 1, 1},  {2000, 2, 29},  {2013, 4, 10}, {1969, 12, 31},
      {1968, 2, 29}, {1900, 2, 28},  {2100, 3, 1},  {2016, 7, 4},
  };
  for (const CivilDate& d : samples) {
    CAPTURE(format_date(d));
    CHECK(days_from_civil(d) == walk_days(d));
    CHECK(civil_from_days(days_from_civil(d)) == d);
  }
}

TEST_CASE("round trip over random serial days") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(-200000, 200000);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t z = dist(rng);
    const CivilDate d = civil_from_days(z);
    CHECK(valid_civil(d));
    CHECK(days_from_civil(d) == z);
  }
}

TEST_CASE("weekday anchors") {
  // 1970-01-01 was a Thursday.
  CHECK(weekday_of(days_from_civil({1970, 1, 1})) == 4);
  CHECK(weekday_of(days_from_civil({2013, 4, 10})) == 3);   // Wednesday
  CHECK(weekday_of(days_from_civil({2000, 1, 1})) == 6);    // Saturday
  CHECK(weekday_of(days_from_civil({2013, 4, 14})) == 7);   // Sunday
  CHECK(weekday_of(days_from_civil({2013, 4, 15})) == 1);   // Monday
}

TEST_CASE("weekday advances by one per day") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int64_t> dist(-100000, 100000);
  for (int i = 0; i < 500; ++i) {
    const std::int64_t z = dist(rng);
    const int w = weekday_of(z);
    CHECK(w >= 1);
    CHECK(w <= 7);
    CHECK(weekday_of(z + 1) == (w % 7) + 1);
  }
}

TEST_CASE("iso week known values") {
  // Boundary years where the ISO year differs from the civil year.
  IsoWeek w = iso_week_of(days_from_civil({2005, 1, 1}));
  CHECK(w.year == 2004);
  CHECK(w.week == 53);
  w = iso_week_of(days_from_civil({2008, 12, 29}));
  CHECK(w.year == 2009);
  CHECK(w.week == 1);
  w = iso_week_of(days_from_civil({2013, 4, 10}));
  CHECK(w.year == 2013);
  CHECK(w.week == 15);
  w = iso_week_of(days_from_civil({2010, 1, 3}));
  CHECK(w.year == 2009);
  CHECK(w.week == 53);
}

TEST_CASE("iso week start inverts iso week of") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<std::int64_t> dist(-40000, 40000);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t z = dist(rng);
    const IsoWeek w = iso_week_of(z);
    const std::int64_t start = iso_week_start(w.year, w.week);
    CHECK(weekday_of(start) == 1);
    CHECK(start <= z);
    CHECK(z < start + 7);
    const IsoWeek again = iso_week_of(start);
    CHECK(again.year == w.year);
    CHECK(again.week == w.week);
  }
}

TEST_CASE("instants") {
  const Instant t = instant_from({2013, 4, 10}, {14, 30, 0});
  CHECK(t.day == days_from_civil({2013, 4, 10}));
  CHECK(t.sec == 14 * 3600 + 30 * 60);
  CHECK(format_instant(t) == "2013-04-10T14:30:00");

  Instant u = instant_add_seconds(t, 86400);
  CHECK(u.day == t.day + 1);
  CHECK(u.sec == t.sec);
  u = instant_add_seconds(t, -15 * 3600);
  CHECK(u.day == t.day - 1);
  CHECK(u.sec == 23 * 3600 + 30 * 60);
  CHECK(instant_add_seconds(t, 0) == t);
}

TEST_CASE("seconds offset stays in range") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::int64_t> day(-50000, 50000);
  std::uniform_int_distribution<std::int64_t> delta(-2000000, 2000000);
  for (int i = 0; i < 1000; ++i) {
    Instant t{day(rng), 0};
    const std::int64_t d = delta(rng);
    const Instant u = instant_add_seconds(t, d);
    CHECK(u.sec >= 0);
    CHECK(u.sec < 86400);
    CHECK(u.total_seconds() == t.total_seconds() + d);
  }
}

TEST_CASE("month shifts clamp to month end") {
  auto at = [](int y, int m, int d) { return instant_from({y, m, d}); };
  CHECK(instant_add_months(at(2013, 1, 31), 1) == at(2013, 2, 28));
  CHECK(instant_add_months(at(2012, 1, 31), 1) == at(2012, 2, 29));
  CHECK(instant_add_months(at(2013, 3, 31), -1) == at(2013, 2, 28));
  CHECK(instant_add_months(at(2013, 1, 15), 12) == at(2014, 1, 15));
  CHECK(instant_add_months(at(2013, 1, 15), -13) == at(2011, 12, 15));
  CHECK(instant_add_months(at(2012, 2, 29), 12) == at(2013, 2, 28));
  // Time of day rides along unchanged.
  const Instant t = instant_from({2013, 5, 31}, {9, 15, 30});
  const Instant u = instant_add_months(t, 1);
  CHECK(civil_from_days(u.day) == CivilDate{2013, 6, 30});
  CHECK(u.sec == t.sec);
}

TEST_CASE("month shift round trips away from month ends") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> year(1900, 2100);
  std::uniform_int_distribution<int> month(1, 12);
  std::uniform_int_distribution<int> day(1, 28);
  std::uniform_int_distribution<std::int64_t> shift(-600, 600);
  for (int i = 0; i < 1000; ++i) {
    const Instant t = instant_from({year(rng), month(rng), day(rng)});
    const std::int64_t m = shift(rng);
    // Days 1..28 exist in every month, so the shift is exactly invertible.
    CHECK(instant_add_months(instant_add_months(t, m), -m) == t);
  }
}

TEST_CASE("date formatting and parsing") {
  CHECK(format_date({2013, 4, 10}) == "2013-04-10");
  CHECK(format_date({813, 1, 2}) == "0813-01-02");
  CHECK(parse_date("2013-04-10") == CivilDate{2013, 4, 10});
  CHECK(parse_date("2012-02-29") == CivilDate{2012, 2, 29});
  CHECK_FALSE(parse_date("2013-02-29").has_value());
  CHECK_FALSE(parse_date("2013-4-10").has_value());
  CHECK_FALSE(parse_date("2013/04/10").has_value());
  CHECK_FALSE(parse_date("20130410").has_value());
  CHECK_FALSE(parse_date("").has_value());
}

TEST_CASE("parse format fixpoint on random dates") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<std::int64_t> dist(-150000, 150000);
  for (int i = 0; i < 500; ++i) {
    const CivilDate d = civil_from_days(dist(rng));
    const auto back = parse_date(format_date(d));
    REQUIRE(back.has_value());
    CHECK(*back == d);
  }
}
