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

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "timextk/calendar.hpp"
#include "timextk/grammar.hpp"
#include "timextk/operators.hpp"
#include "timextk/parser.hpp"
#include "timextk/types.hpp"
#include "timextk/value.hpp"

namespace timextk {

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PeriodAmount {
  bool is_x = false;  // the unspecified amount, serialized as X
  std::int64_t value = 0;

  bool operator==(const PeriodAmount&) const = default;
};

struct PeriodObject {
  // Indexed by TimeUnit; absent units are not part of the period.
  std::array<std::optional<PeriodAmount>, 10> units;
  bool recurring = false;  // SetOf wraps a period into a recurrence

  bool operator==(const PeriodObject&) const = default;
};

// A half-open span of time carrying the granularity it was produced at.
// Spans from granule searches are calendar-aligned; moved spans may not
// be. Serialization reads the start at the stated granularity.
struct TimeSpanObject {
  Instant start;
  Instant end;
  Granularity granularity = Granularity::Day;
  std::optional<PartOfDay> part_of_day;  // set on part-of-day granules
  std::optional<Season> season;          // set on season quarters
  // Fields below the surface resolution, serialized as X ("2002-XX-XX").
  std::vector<CalField> underspecified;

  bool operator==(const TimeSpanObject&) const = default;
};

struct RefObject {
  int direction = 0;  // -1 past, 0 present, +1 future

  bool operator==(const RefObject&) const = default;
};

using TemporalObject = std::variant<TimeSpanObject, PeriodObject, RefObject>;

// A set of calendar field constraints, e.g. {MonthOfYear: 3, DayOfMonth: 6}.
struct FieldMap {
  std::map<CalField, std::int64_t> numeric;
  std::optional<PartOfDay> pod;
  std::optional<Season> season;

  // Throw EvalError on duplicate fields and domain violations.
  void set_numeric(CalField f, std::int64_t v);
  void set_pod(PartOfDay p);
  void set_season(Season s);

  bool empty() const { return numeric.empty() && !pod && !season; }
  // The resolution a search constrained by this map runs at.
  Granularity finest() const;
};

// Calendar granule arithmetic. All spans are half-open.
TimeSpanObject granule_of(const Instant& t, Granularity g,
                          const GrammarConfig& config);
TimeSpanObject pod_granule(std::int64_t day, PartOfDay p,
                           const GrammarConfig& config);
TimeSpanObject season_granule_of(const Instant& t, const GrammarConfig& config);

bool granule_matches(const TimeSpanObject& span, const FieldMap& fields);

// The anchor day.
TimeSpanObject present_span(const Anchor& anchor, const GrammarConfig& config);

// Latest granule matching `fields` that ends at or before the span start
// (strictly earlier), and the mirror image. Both give up with EvalError
// beyond a 400-year horizon.
TimeSpanObject find_earlier(const TimeSpanObject& ts, const FieldMap& fields,
                            const GrammarConfig& config);
TimeSpanObject find_later(const TimeSpanObject& ts, const FieldMap& fields,
                          const GrammarConfig& config);
// Earliest matching granule starting inside the span.
TimeSpanObject find_within(const TimeSpanObject& ts, const FieldMap& fields,
                           const GrammarConfig& config);
// The coarser granule containing the span start.
TimeSpanObject find_enclosing(const TimeSpanObject& ts, TimeUnit unit,
                              const GrammarConfig& config);
// Builds a span directly from absolute fields (requires Year).
TimeSpanObject find_absolute(const FieldMap& fields,
                             const GrammarConfig& config);

// Shifts both endpoints by the period: the month-valued part first (with
// end-of-month clamping), then the exactly-sized part in seconds. The
// span is not re-aligned to calendar granules, so sub-month moves invert
// exactly. direction is +1 (later) or -1 (earlier).
TimeSpanObject move_span(const TimeSpanObject& ts, const PeriodObject& p,
                         int direction);
// [ts.end, ts.end + p) at the period's finest granularity.
TimeSpanObject start_at_end_of(const TimeSpanObject& ts, const PeriodObject& p);
// [ts.start - p, ts.start).
TimeSpanObject end_at_start_of(const TimeSpanObject& ts, const PeriodObject& p);
// Same span reported at a finer granularity with the fields in between
// marked underspecified: a year span at day granularity is "YYYY-XX-XX".
TimeSpanObject underspecified_span(const TimeSpanObject& ts, TimeUnit unit);

// Evaluates a parse's target tree against the anchor. Throws EvalError
// for calendar-impossible or exhausted searches.
TemporalObject evaluate(const TgtNode& target, const Anchor& anchor,
                        const GrammarConfig& config);

std::string to_timeml(const TemporalObject& obj);
TimexType object_type(const TemporalObject& obj);

// Orders parses best-first: fewer Nil tokens, then earlier spans before
// later ones relative to the anchor (periods and refs are neutral), then
// rule order. Only the best 32 pre-ranked parses are evaluated; parses
// whose evaluation fails sort last.
std::vector<SyncParse> rank_parses(std::vector<SyncParse> parses,
                                   const Anchor& anchor,
                                   const Grammar& grammar);

struct NormalizeOutcome {
  enum class Status { Ok, ParseFailure, EvalFailure };
  Status status = Status::ParseFailure;
  std::string value;  // TimeML value when Ok
  TimexType type = TimexType::Date;
  std::string diagnostic;
  std::optional<SyncParse> parse;  // the winning derivation when Ok

  bool ok() const { return status == Status::Ok; }
};

// tokenize + parse + rank + evaluate. Total: failures are reported in the
// outcome, never thrown.
NormalizeOutcome normalize(std::string_view text, const Anchor& anchor,
                           const Grammar& grammar);

}  // namespace timextk
