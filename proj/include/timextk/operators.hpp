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

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "timextk/value.hpp"

namespace timextk {

// Units a period can be measured in. Part-of-day is a granularity but not
// a unit: no period counts part-of-days.
enum class TimeUnit {
  Centuries,
  Decades,
  Years,
  Quarters,
  Months,
  Weeks,
  Days,
  Hours,
  Minutes,
  Seconds,
};

// Calendar fields a search constrains.
enum class CalField {
  Year,
  DecadeOfCentury,
  SeasonOfYear,
  MonthOfYear,
  DayOfMonth,
  DayOfWeek,
  PartOfDay,
  HourOfDay,
  MinuteOfHour,
  SecondOfMinute,
};

enum class PartOfDay { Morning, Midday, Afternoon, Evening, Night };
enum class Season { Spring, Summer, Fall, Winter };

// Everything a target-side symbol can name besides integer literals and
// aligned non-terminals.
enum class SymbolKind {
  SpanOperator,   // Present, FindEarlier, MoveLater, ...
  RefConstant,    // PastRef, PresentRef, FutureRef
  PeriodOperator, // Simple, Sum, SetOf
  FieldName,      // Year, MonthOfYear, ...
  UnitName,       // Centuries .. Seconds
  PodConstant,    // Morning .. Night
  SeasonConstant, // Spring .. Winter
  Unspecified,    // the X amount
};

struct SymbolInfo {
  std::string_view name;
  SymbolKind kind;
  int code;  // enum value within its kind
};

// Returns nullptr for unknown names. Lookup is exact (case-sensitive).
const SymbolInfo* lookup_symbol(std::string_view name);

std::string to_string(TimeUnit u);
std::string to_string(CalField f);
std::string to_string(PartOfDay p);
std::string to_string(Season s);

Granularity unit_granularity(TimeUnit u);

// Resolution a search constrained by this field runs at.
Granularity field_granularity(CalField f);

// Inclusive numeric domain for integer-valued fields. Fields taking
// symbolic values (PartOfDay, SeasonOfYear) have no numeric domain.
// DecadeOfCentury additionally accepts two-digit decade labels (90 means
// the years ..90-..99).
std::optional<std::pair<int, int>> field_domain(CalField f);

}  // namespace timextk
