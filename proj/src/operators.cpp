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

#include "timextk/operators.hpp"

#include <array>

namespace timextk {

namespace {

// Span operator codes, shared with the evaluator.
// 0 Present, 1 FindAbsolute, 2 FindEarlier, 3 FindLater, 4 FindEnclosing,
// 5 FindWithin, 6 MoveEarlier, 7 MoveLater, 8 StartAtEndOf,
// 9 EndAtStartOf, 10 Underspecified.
constexpr std::array<SymbolInfo, 42> kSymbols = {{
    {"Present", SymbolKind::SpanOperator, 0},
    {"FindAbsolute", SymbolKind::SpanOperator, 1},
    {"FindEarlier", SymbolKind::SpanOperator, 2},
    {"FindLater", SymbolKind::SpanOperator, 3},
    {"FindEnclosing", SymbolKind::SpanOperator, 4},
    {"FindWithin", SymbolKind::SpanOperator, 5},
    {"MoveEarlier", SymbolKind::SpanOperator, 6},
    {"MoveLater", SymbolKind::SpanOperator, 7},
    {"StartAtEndOf", SymbolKind::SpanOperator, 8},
    {"EndAtStartOf", SymbolKind::SpanOperator, 9},
    {"Underspecified", SymbolKind::SpanOperator, 10},
    {"PastRef", SymbolKind::RefConstant, 0},
    {"PresentRef", SymbolKind::RefConstant, 1},
    {"FutureRef", SymbolKind::RefConstant, 2},
    {"Simple", SymbolKind::PeriodOperator, 0},
    {"Sum", SymbolKind::PeriodOperator, 1},
    {"SetOf", SymbolKind::PeriodOperator, 2},
    {"Year", SymbolKind::FieldName, static_cast<int>(CalField::Year)},
    {"DecadeOfCentury", SymbolKind::FieldName,
     static_cast<int>(CalField::DecadeOfCentury)},
    {"SeasonOfYear", SymbolKind::FieldName,
     static_cast<int>(CalField::SeasonOfYear)},
    {"MonthOfYear", SymbolKind::FieldName,
     static_cast<int>(CalField::MonthOfYear)},
    {"DayOfMonth", SymbolKind::FieldName,
     static_cast<int>(CalField::DayOfMonth)},
    {"DayOfWeek", SymbolKind::FieldName, static_cast<int>(CalField::DayOfWeek)},
    {"PartOfDay", SymbolKind::FieldName, static_cast<int>(CalField::PartOfDay)},
    {"HourOfDay", SymbolKind::FieldName, static_cast<int>(CalField::HourOfDay)},
    {"MinuteOfHour", SymbolKind::FieldName,
     static_cast<int>(CalField::MinuteOfHour)},
    {"SecondOfMinute", SymbolKind::FieldName,
     static_cast<int>(CalField::SecondOfMinute)},
    {"Centuries", SymbolKind::UnitName, static_cast<int>(TimeUnit::Centuries)},
    {"Decades", SymbolKind::UnitName, static_cast<int>(TimeUnit::Decades)},
    {"Years", SymbolKind::UnitName, static_cast<int>(TimeUnit::Years)},
    {"Quarters", SymbolKind::UnitName, static_cast<int>(TimeUnit::Quarters)},
    {"Months", SymbolKind::UnitName, static_cast<int>(TimeUnit::Months)},
    {"Weeks", SymbolKind::UnitName, static_cast<int>(TimeUnit::Weeks)},
    {"Days", SymbolKind::UnitName, static_cast<int>(TimeUnit::Days)},
    {"Hours", SymbolKind::UnitName, static_cast<int>(TimeUnit::Hours)},
    {"Minutes", SymbolKind::UnitName, static_cast<int>(TimeUnit::Minutes)},
    {"Seconds", SymbolKind::UnitName, static_cast<int>(TimeUnit::Seconds)},
    {"Morning", SymbolKind::PodConstant, static_cast<int>(PartOfDay::Morning)},
    {"Midday", SymbolKind::PodConstant, static_cast<int>(PartOfDay::Midday)},
    {"Afternoon", SymbolKind::PodConstant,
     static_cast<int>(PartOfDay::Afternoon)},
    {"Evening", SymbolKind::PodConstant, static_cast<int>(PartOfDay::Evening)},
    {"Night", SymbolKind::PodConstant, static_cast<int>(PartOfDay::Night)},
}};

constexpr std::array<SymbolInfo, 5> kMoreSymbols = {{
    {"Spring", SymbolKind::SeasonConstant, static_cast<int>(Season::Spring)},
    {"Summer", SymbolKind::SeasonConstant, static_cast<int>(Season::Summer)},
    {"Fall", SymbolKind::SeasonConstant, static_cast<int>(Season::Fall)},
    {"Winter", SymbolKind::SeasonConstant, static_cast<int>(Season::Winter)},
    {"X", SymbolKind::Unspecified, 0},
}};

}  // namespace

const SymbolInfo* lookup_symbol(std::string_view name) {
  for (const auto& s : kSymbols)
    if (s.name == name) return &s;
  for (const auto& s : kMoreSymbols)
    if (s.name == name) return &s;
  return nullptr;
}

std::string to_string(TimeUnit u) {
  switch (u) {
    case TimeUnit::Centuries: return "Centuries";
    case TimeUnit::Decades: return "Decades";
    case TimeUnit::Years: return "Years";
    case TimeUnit::Quarters: return "Quarters";
    case TimeUnit::Months: return "Months";
    case TimeUnit::Weeks: return "Weeks";
    case TimeUnit::Days: return "Days";
    case TimeUnit::Hours: return "Hours";
    case TimeUnit::Minutes: return "Minutes";
    case TimeUnit::Seconds: return "Seconds";
  }
  return "Days";
}

std::string to_string(CalField f) {
  switch (f) {
    case CalField::Year: return "Year";
    case CalField::DecadeOfCentury: return "DecadeOfCentury";
    case CalField::SeasonOfYear: return "SeasonOfYear";
    case CalField::MonthOfYear: return "MonthOfYear";
    case CalField::DayOfMonth: return "DayOfMonth";
    case CalField::DayOfWeek: return "DayOfWeek";
    case CalField::PartOfDay: return "PartOfDay";
    case CalField::HourOfDay: return "HourOfDay";
    case CalField::MinuteOfHour: return "MinuteOfHour";
    case CalField::SecondOfMinute: return "SecondOfMinute";
  }
  return "Year";
}

std::string to_string(PartOfDay p) {
  switch (p) {
    case PartOfDay::Morning: return "Morning";
    case PartOfDay::Midday: return "Midday";
    case PartOfDay::Afternoon: return "Afternoon";
    case PartOfDay::Evening: return "Evening";
    case PartOfDay::Night: return "Night";
  }
  return "Morning";
}

std::string to_string(Season s) {
  switch (s) {
    case Season::Spring: return "Spring";
    case Season::Summer: return "Summer";
    case Season::Fall: return "Fall";
    case Season::Winter: return "Winter";
  }
  return "Spring";
}

Granularity unit_granularity(TimeUnit u) {
  switch (u) {
    case TimeUnit::Centuries: return Granularity::Century;
    case TimeUnit::Decades: return Granularity::Decade;
    case TimeUnit::Years: return Granularity::Year;
    case TimeUnit::Quarters: return Granularity::Quarter;
    case TimeUnit::Months: return Granularity::Month;
    case TimeUnit::Weeks: return Granularity::Week;
    case TimeUnit::Days: return Granularity::Day;
    case TimeUnit::Hours: return Granularity::Hour;
    case TimeUnit::Minutes: return Granularity::Minute;
    case TimeUnit::Seconds: return Granularity::Second;
  }
  return Granularity::Day;
}

Granularity field_granularity(CalField f) {
  switch (f) {
    case CalField::Year: return Granularity::Year;
    case CalField::DecadeOfCentury: return Granularity::Decade;
    case CalField::SeasonOfYear: return Granularity::Quarter;
    case CalField::MonthOfYear: return Granularity::Month;
    case CalField::DayOfMonth: return Granularity::Day;
    case CalField::DayOfWeek: return Granularity::Day;
    case CalField::PartOfDay: return Granularity::PartOfDay;
    case CalField::HourOfDay: return Granularity::Hour;
    case CalField::MinuteOfHour: return Granularity::Minute;
    case CalField::SecondOfMinute: return Granularity::Second;
  }
  return Granularity::Day;
}

std::optional<std::pair<int, int>> field_domain(CalField f) {
  switch (f) {
    case CalField::Year: return std::pair{1, 9999};
    case CalField::DecadeOfCentury: return std::pair{0, 99};
    case CalField::MonthOfYear: return std::pair{1, 12};
    case CalField::DayOfMonth: return std::pair{1, 31};
    case CalField::DayOfWeek: return std::pair{1, 7};
    case CalField::HourOfDay: return std::pair{0, 23};
    case CalField::MinuteOfHour: return std::pair{0, 59};
    case CalField::SecondOfMinute: return std::pair{0, 59};
    case CalField::SeasonOfYear:
    case CalField::PartOfDay:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace timextk
