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

#include <string>
#include <string_view>

namespace timextk {

enum class ValueShape { Date, Time, Period, Ref };

// Coarse-to-fine ladder of value resolutions. Unspecified marks values
// whose resolution cannot be read off the surface form.
enum class Granularity {
  Century,
  Decade,
  Year,
  Quarter,
  Month,
  Week,
  Day,
  PartOfDay,
  Hour,
  Minute,
  Second,
  Unspecified,
};

std::string to_string(ValueShape s);
std::string to_string(Granularity g);

struct ValueInfo {
  std::string raw;
  ValueShape shape = ValueShape::Date;
  Granularity granularity = Granularity::Unspecified;
  // True when an X stands in a digit position ("2002-XX-XX", "PXD") and
  // for values that fit no known surface pattern.
  bool underspecified = false;
  bool well_formed = false;

  bool operator==(const ValueInfo&) const = default;
};

// Total function: any string classifies. Unknown surface forms fall back
// to shape DATE (or PERIOD/REF by leading characters) with granularity
// Unspecified and underspecified set.
ValueInfo classify_value(std::string_view raw);

// Idempotent rewriting into the canonical surface form: uppercase, period
// century/decade amounts folded into years, quarters folded into months.
// Weeks are never rewritten. Non-period values are only uppercased.
std::string canonicalize_value(std::string_view raw);

// Equality modulo canonicalization: P1DE and P10Y are equivalent.
bool values_equivalent(std::string_view a, std::string_view b);

}  // namespace timextk
