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

#include "timextk/temporal.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace timextk {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  return a - floor_div(a, b) * b;
}

int ladder(Granularity g) { return static_cast<int>(g); }

constexpr std::int64_t kHorizonMonths = 4800;  // 400 years
constexpr std::int64_t kMaxPeriodAmount = 4000000000;

}  // namespace

void FieldMap::set_numeric(CalField f, std::int64_t v) {
  const auto domain = field_domain(f);
  if (!domain) throw EvalError(to_string(f) + " takes a symbolic value");
  if (v < domain->first || v > domain->second)
    throw EvalError(to_string(f) + " value " + std::to_string(v) +
                    " is out of range");
  if (f == CalField::DecadeOfCentury && v >= 10 && v % 10 != 0)
    throw EvalError("two-digit decade labels end in zero");
  if (!numeric.emplace(f, v).second)
    throw EvalError("duplicate field " + to_string(f));
}

void FieldMap::set_pod(PartOfDay p) {
  if (pod) throw EvalError("duplicate field PartOfDay");
  pod = p;
}

void FieldMap::set_season(Season s) {
  if (season) throw EvalError("duplicate field SeasonOfYear");
  season = s;
}

Granularity FieldMap::finest() const {
  Granularity finest = Granularity::Century;
  bool any = false;
  auto consider = [&](Granularity g) {
    if (!any || ladder(g) > ladder(finest)) finest = g;
    any = true;
  };
  for (const auto& [f, v] : numeric) consider(field_granularity(f));
  if (pod) consider(Granularity::PartOfDay);
  if (season) consider(Granularity::Quarter);
  if (!any) throw EvalError("empty field constraint");
  return finest;
}

TimeSpanObject pod_granule(std::int64_t day, PartOfDay p,
                           const GrammarConfig& config) {
  const auto [from, to] = config.part_of_day[static_cast<std::size_t>(p)];
  TimeSpanObject span;
  span.start = instant_add_seconds({day, 0}, static_cast<std::int64_t>(from) * 60);
  span.end = instant_add_seconds({day, 0}, static_cast<std::int64_t>(to) * 60);
  span.granularity = Granularity::PartOfDay;
  span.part_of_day = p;
  return span;
}

TimeSpanObject season_granule_of(const Instant& t,
                                 const GrammarConfig& config) {
  const int year = civil_from_days(t.day).year;
  std::vector<std::pair<Instant, Season>> bounds;
  for (int y = year - 1; y <= year + 1; ++y) {
    for (int s = 0; s < 4; ++s) {
      const auto [m, d] = config.season_start[static_cast<std::size_t>(s)];
      bounds.push_back({instant_from({y, m, d}), static_cast<Season>(s)});
    }
  }
  std::sort(bounds.begin(), bounds.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t at = bounds.size();
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i].first <= t) at = i;
  }
  if (at == bounds.size() || at + 1 == bounds.size())
    throw EvalError("season table does not cover the date");
  TimeSpanObject span;
  span.start = bounds[at].first;
  span.end = bounds[at + 1].first;
  span.granularity = Granularity::Quarter;
  span.season = bounds[at].second;
  return span;
}

TimeSpanObject granule_of(const Instant& t, Granularity g,
                          const GrammarConfig& config) {
  const CivilDate d = civil_from_days(t.day);
  TimeSpanObject span;
  span.granularity = g;
  auto day_range = [&](std::int64_t from_day, std::int64_t to_day) {
    span.start = {from_day, 0};
    span.end = {to_day, 0};
  };
  switch (g) {
    case Granularity::Century: {
      const int y = static_cast<int>(floor_div(d.year, 100) * 100);
      day_range(days_from_civil({y, 1, 1}), days_from_civil({y + 100, 1, 1}));
      return span;
    }
    case Granularity::Decade: {
      const int y = static_cast<int>(floor_div(d.year, 10) * 10);
      day_range(days_from_civil({y, 1, 1}), days_from_civil({y + 10, 1, 1}));
      return span;
    }
    case Granularity::Year:
      day_range(days_from_civil({d.year, 1, 1}),
                days_from_civil({d.year + 1, 1, 1}));
      return span;
    case Granularity::Quarter: {
      const int q0 = (d.month - 1) / 3;
      const std::int64_t from = days_from_civil({d.year, q0 * 3 + 1, 1});
      day_range(from, instant_add_months({from, 0}, 3).day);
      return span;
    }
    case Granularity::Month: {
      const std::int64_t from = days_from_civil({d.year, d.month, 1});
      day_range(from, instant_add_months({from, 0}, 1).day);
      return span;
    }
    case Granularity::Week: {
      const std::int64_t monday = t.day - (weekday_of(t.day) - 1);
      day_range(monday, monday + 7);
      return span;
    }
    case Granularity::Day:
      day_range(t.day, t.day + 1);
      return span;
    case Granularity::PartOfDay: {
      const int minute = t.sec / 60;
      for (int p = 0; p < 5; ++p) {
        const auto [from, to] =
            config.part_of_day[static_cast<std::size_t>(p)];
        if (minute >= from && minute < to)
          return pod_granule(t.day, static_cast<PartOfDay>(p), config);
      }
      throw EvalError("no part of day covers the time");
    }
    case Granularity::Hour:
      span.start = {t.day, (t.sec / 3600) * 3600};
      span.end = instant_add_seconds(span.start, 3600);
      return span;
    case Granularity::Minute:
      span.start = {t.day, (t.sec / 60) * 60};
      span.end = instant_add_seconds(span.start, 60);
      return span;
    case Granularity::Second:
      span.start = t;
      span.end = instant_add_seconds(t, 1);
      return span;
    case Granularity::Unspecified:
      break;
  }
  throw EvalError("no granule for unspecified granularity");
}

bool granule_matches(const TimeSpanObject& span, const FieldMap& fields) {
  const CivilDate d = civil_from_days(span.start.day);
  for (const auto& [f, v] : fields.numeric) {
    switch (f) {
      case CalField::Year:
        if (d.year != v) return false;
        break;
      case CalField::DecadeOfCentury:
        if (v < 10) {
          if (floor_mod(floor_div(d.year, 10), 10) != v) return false;
        } else {
          if (floor_mod(d.year, 100) != v) return false;
        }
        break;
      case CalField::MonthOfYear:
        if (d.month != v) return false;
        break;
      case CalField::DayOfMonth:
        if (d.day != v) return false;
        break;
      case CalField::DayOfWeek:
        if (weekday_of(span.start.day) != v) return false;
        break;
      case CalField::HourOfDay:
        if (span.start.sec / 3600 != v) return false;
        break;
      case CalField::MinuteOfHour:
        if ((span.start.sec / 60) % 60 != v) return false;
        break;
      case CalField::SecondOfMinute:
        if (span.start.sec % 60 != v) return false;
        break;
      case CalField::PartOfDay:
      case CalField::SeasonOfYear:
        break;
    }
  }
  if (fields.pod && span.part_of_day != fields.pod) return false;
  if (fields.season && span.season != fields.season) return false;
  return true;
}

namespace {

struct SearchContext {
  const FieldMap& fields;
  const GrammarConfig& config;
  Granularity g;
  bool pod_mode = false;
  bool season_mode = false;
};

SearchContext make_context(const FieldMap& fields,
                           const GrammarConfig& config) {
  SearchContext ctx{fields, config, fields.finest()};
  if (fields.pod) {
    if (ctx.g != Granularity::PartOfDay)
      throw EvalError("part-of-day constraints must be the finest field");
    ctx.pod_mode = true;
  }
  if (fields.season) {
    if (ctx.g != Granularity::Quarter)
      throw EvalError("season constraints must be the finest field");
    ctx.season_mode = true;
  }
  return ctx;
}

TimeSpanObject granule_at(const SearchContext& ctx, const Instant& t) {
  if (ctx.pod_mode) return pod_granule(t.day, *ctx.fields.pod, ctx.config);
  if (ctx.season_mode) return season_granule_of(t, ctx.config);
  return granule_of(t, ctx.g, ctx.config);
}

TimeSpanObject prev_granule(const SearchContext& ctx,
                            const TimeSpanObject& span) {
  if (ctx.pod_mode)
    return pod_granule(span.start.day - 1, *ctx.fields.pod, ctx.config);
  return granule_at(ctx, instant_add_seconds(span.start, -1));
}

TimeSpanObject next_granule(const SearchContext& ctx,
                            const TimeSpanObject& span) {
  if (ctx.pod_mode)
    return pod_granule(span.start.day + 1, *ctx.fields.pod, ctx.config);
  return granule_at(ctx, span.end);
}

// The coarsest constrained field the candidate violates, or nullopt on a
// match. Skipping the whole enclosing granule of that field's granularity
// is safe: every granule inside it shares the mismatched value.
std::optional<CalField> coarsest_mismatch(const SearchContext& ctx,
                                          const TimeSpanObject& span) {
  std::optional<CalField> worst;
  int worst_ladder = 99;
  auto consider = [&](CalField f, bool ok) {
    if (ok) return;
    const int l = ladder(field_granularity(f));
    if (l < worst_ladder) {
      worst_ladder = l;
      worst = f;
    }
  };
  FieldMap single;
  for (const auto& [f, v] : ctx.fields.numeric) {
    single.numeric.clear();
    single.numeric.emplace(f, v);
    consider(f, granule_matches(span, single));
  }
  if (ctx.fields.season)
    consider(CalField::SeasonOfYear, span.season == ctx.fields.season);
  // pod never mismatches: candidates are built with the required value.
  return worst;
}

// First instant of the enclosing granule the mismatched field is constant
// over. For seasons that granule is the candidate itself.
TimeSpanObject field_granule(const SearchContext& ctx, CalField f,
                             const TimeSpanObject& span) {
  if (f == CalField::SeasonOfYear) return span;
  return granule_of(span.start, field_granularity(f), ctx.config);
}

[[noreturn]] void exhausted() {
  throw EvalError("no matching granule within the 400-year horizon");
}

}  // namespace

TimeSpanObject present_span(const Anchor& anchor,
                            const GrammarConfig& config) {
  return granule_of(anchor.instant(), Granularity::Day, config);
}

TimeSpanObject find_earlier(const TimeSpanObject& ts, const FieldMap& fields,
                            const GrammarConfig& config) {
  const SearchContext ctx = make_context(fields, config);
  const Instant horizon = instant_add_months(ts.start, -kHorizonMonths);
  TimeSpanObject candidate = granule_at(ctx, ts.start);
  for (int guard = 0; guard < 1000000; ++guard) {
    if (candidate.end > ts.start) {
      candidate = prev_granule(ctx, candidate);
      continue;
    }
    if (candidate.end <= horizon) exhausted();
    const auto mismatch = coarsest_mismatch(ctx, candidate);
    if (!mismatch) return candidate;
    const TimeSpanObject block = field_granule(ctx, *mismatch, candidate);
    candidate = granule_at(ctx, instant_add_seconds(block.start, -1));
  }
  throw EvalError("search did not converge");
}

TimeSpanObject find_later(const TimeSpanObject& ts, const FieldMap& fields,
                          const GrammarConfig& config) {
  const SearchContext ctx = make_context(fields, config);
  const Instant horizon = instant_add_months(ts.end, kHorizonMonths);
  TimeSpanObject candidate = granule_at(ctx, ts.end);
  for (int guard = 0; guard < 1000000; ++guard) {
    if (candidate.start < ts.end) {
      candidate = next_granule(ctx, candidate);
      continue;
    }
    if (candidate.start >= horizon) exhausted();
    const auto mismatch = coarsest_mismatch(ctx, candidate);
    if (!mismatch) return candidate;
    const TimeSpanObject block = field_granule(ctx, *mismatch, candidate);
    candidate = granule_at(ctx, block.end);
  }
  throw EvalError("search did not converge");
}

TimeSpanObject find_within(const TimeSpanObject& ts, const FieldMap& fields,
                           const GrammarConfig& config) {
  const SearchContext ctx = make_context(fields, config);
  TimeSpanObject candidate = granule_at(ctx, ts.start);
  for (int guard = 0; guard < 1000000; ++guard) {
    if (candidate.start < ts.start) {
      candidate = next_granule(ctx, candidate);
      continue;
    }
    if (candidate.start >= ts.end)
      throw EvalError("no matching granule inside the span");
    const auto mismatch = coarsest_mismatch(ctx, candidate);
    if (!mismatch) return candidate;
    const TimeSpanObject block = field_granule(ctx, *mismatch, candidate);
    candidate = granule_at(ctx, block.end);
  }
  throw EvalError("search did not converge");
}

TimeSpanObject find_enclosing(const TimeSpanObject& ts, TimeUnit unit,
                              const GrammarConfig& config) {
  const Granularity g = unit_granularity(unit);
  if (ladder(g) > ladder(ts.granularity))
    throw EvalError("enclosing granule cannot be finer than the span");
  return granule_of(ts.start, g, config);
}

TimeSpanObject find_absolute(const FieldMap& fields,
                             const GrammarConfig& config) {
  const auto& m = fields.numeric;
  const auto year_it = m.find(CalField::Year);
  if (year_it == m.end())
    throw EvalError("absolute references need a year");
  if (m.count(CalField::DayOfWeek) || m.count(CalField::DecadeOfCentury))
    throw EvalError("weekday and decade fields are not absolute");
  const int year = static_cast<int>(year_it->second);

  auto has = [&](CalField f) { return m.count(f) != 0; };
  if (fields.season) {
    if (m.size() != 1 || fields.pod || has(CalField::MonthOfYear))
      throw EvalError("season references take only a year");
    const auto [sm, sd] =
        config.season_start[static_cast<std::size_t>(*fields.season)];
    return season_granule_of(instant_from({year, sm, sd}), config);
  }
  if (!has(CalField::MonthOfYear)) {
    if (m.size() != 1 || fields.pod)
      throw EvalError("field combination is not absolute");
    return granule_of(instant_from({year, 1, 1}), Granularity::Year, config);
  }
  const int month = static_cast<int>(m.at(CalField::MonthOfYear));
  if (!has(CalField::DayOfMonth)) {
    if (m.size() != 2 || fields.pod)
      throw EvalError("field combination is not absolute");
    return granule_of(instant_from({year, month, 1}), Granularity::Month,
                      config);
  }
  const int day = static_cast<int>(m.at(CalField::DayOfMonth));
  if (day > days_in_month(year, month))
    throw EvalError("day does not exist in that month");
  const std::int64_t serial = days_from_civil({year, month, day});
  if (fields.pod) {
    if (has(CalField::HourOfDay))
      throw EvalError("part of day and hour cannot combine");
    return pod_granule(serial, *fields.pod, config);
  }
  if (!has(CalField::HourOfDay)) {
    if (m.size() != 3) throw EvalError("field combination is not absolute");
    return granule_of({serial, 0}, Granularity::Day, config);
  }
  const int hour = static_cast<int>(m.at(CalField::HourOfDay));
  if (!has(CalField::MinuteOfHour)) {
    if (m.size() != 4) throw EvalError("field combination is not absolute");
    return granule_of({serial, hour * 3600}, Granularity::Hour, config);
  }
  const int minute = static_cast<int>(m.at(CalField::MinuteOfHour));
  if (!has(CalField::SecondOfMinute)) {
    if (m.size() != 5) throw EvalError("field combination is not absolute");
    return granule_of({serial, hour * 3600 + minute * 60}, Granularity::Minute,
                      config);
  }
  const int second = static_cast<int>(m.at(CalField::SecondOfMinute));
  return granule_of({serial, hour * 3600 + minute * 60 + second},
                    Granularity::Second, config);
}

namespace {

// (months, seconds) split of a fully specified period.
std::pair<std::int64_t, std::int64_t> period_extent(const PeriodObject& p) {
  if (p.recurring) throw EvalError("recurring periods cannot shift spans");
  std::int64_t months = 0;
  std::int64_t seconds = 0;
  static constexpr std::array<std::int64_t, 10> kMonthFactor = {
      1200, 120, 12, 3, 1, 0, 0, 0, 0, 0};
  static constexpr std::array<std::int64_t, 10> kSecondFactor = {
      0, 0, 0, 0, 0, 604800, 86400, 3600, 60, 1};
  for (std::size_t u = 0; u < p.units.size(); ++u) {
    if (!p.units[u]) continue;
    if (p.units[u]->is_x)
      throw EvalError("unspecified amounts cannot shift spans");
    const std::int64_t v = p.units[u]->value;
    if (v < 0 || v > kMaxPeriodAmount) throw EvalError("period too large");
    months += v * kMonthFactor[u];
    seconds += v * kSecondFactor[u];
  }
  return {months, seconds};
}

Instant shift(const Instant& t, std::int64_t months, std::int64_t seconds) {
  return instant_add_seconds(instant_add_months(t, months), seconds);
}

Granularity period_finest(const PeriodObject& p) {
  Granularity g = Granularity::Day;
  bool any = false;
  for (std::size_t u = 0; u < p.units.size(); ++u) {
    if (!p.units[u]) continue;
    g = unit_granularity(static_cast<TimeUnit>(u));
    any = true;
  }
  if (!any) throw EvalError("empty period");
  return g;
}

}  // namespace

TimeSpanObject move_span(const TimeSpanObject& ts, const PeriodObject& p,
                         int direction) {
  if (!ts.underspecified.empty())
    throw EvalError("underspecified spans cannot shift");
  const auto [months, seconds] = period_extent(p);
  TimeSpanObject out = ts;
  out.start = shift(ts.start, direction * months, direction * seconds);
  out.end = shift(ts.end, direction * months, direction * seconds);
  if (seconds % 86400 != 0) out.part_of_day.reset();
  if (seconds != 0 || months % 12 != 0) out.season.reset();
  return out;
}

TimeSpanObject start_at_end_of(const TimeSpanObject& ts,
                               const PeriodObject& p) {
  const auto [months, seconds] = period_extent(p);
  TimeSpanObject out;
  out.start = ts.end;
  out.end = shift(ts.end, months, seconds);
  out.granularity = period_finest(p);
  return out;
}

TimeSpanObject end_at_start_of(const TimeSpanObject& ts,
                               const PeriodObject& p) {
  const auto [months, seconds] = period_extent(p);
  TimeSpanObject out;
  out.start = shift(ts.start, -months, -seconds);
  out.end = ts.start;
  out.granularity = period_finest(p);
  return out;
}

TimeSpanObject underspecified_span(const TimeSpanObject& ts, TimeUnit unit) {
  struct Step {
    Granularity from;
    Granularity to;
    CalField field;
  };
  static constexpr std::array<Step, 5> kChain = {{
      {Granularity::Year, Granularity::Month, CalField::MonthOfYear},
      {Granularity::Month, Granularity::Day, CalField::DayOfMonth},
      {Granularity::Day, Granularity::Hour, CalField::HourOfDay},
      {Granularity::Hour, Granularity::Minute, CalField::MinuteOfHour},
      {Granularity::Minute, Granularity::Second, CalField::SecondOfMinute},
  }};
  const Granularity target = unit_granularity(unit);
  TimeSpanObject out = ts;
  out.part_of_day.reset();
  out.season.reset();
  bool walking = false;
  for (const Step& step : kChain) {
    if (step.from == ts.granularity) walking = true;
    if (walking) {
      out.underspecified.push_back(step.field);
      out.granularity = step.to;
      if (step.to == target) {
        std::sort(out.underspecified.begin(), out.underspecified.end());
        return out;
      }
    }
  }
  throw EvalError("cannot underspecify from " + to_string(ts.granularity) +
                  " to " + to_string(target));
}

namespace {

using EvalValue = std::variant<std::int64_t, TimeUnit, FieldMap, PeriodObject,
                               TimeSpanObject, RefObject>;

class TreeEval {
 public:
  TreeEval(const Anchor& anchor, const GrammarConfig& config)
      : anchor_(anchor), config_(config) {}

  EvalValue eval_node(const TgtNode& node) {
    using Child =
        std::variant<std::shared_ptr<const TgtNode>, TgtLeaf>;
    const std::vector<Child>& kids = node.children;
    std::size_t pos = 0;
    EvalValue out;
    switch (node.label.category) {
      case NtCategory::Int:
        out = int_arg(kids, pos);
        break;
      case NtCategory::Unit:
        out = unit_arg(kids, pos);
        break;
      case NtCategory::Field: {
        FieldMap map;
        while (pos < kids.size()) field_into(kids, pos, map);
        out = std::move(map);
        break;
      }
      case NtCategory::Period:
        out = period_expr(kids, pos);
        break;
      case NtCategory::TimeSpan:
        out = span_or_ref(kids, pos);
        break;
      case NtCategory::Nil:
        throw EvalError("Nil nodes carry no value");
    }
    if (pos != kids.size()) throw EvalError("trailing target symbols");
    return out;
  }

 private:
  const Anchor& anchor_;
  const GrammarConfig& config_;

  using Child = std::variant<std::shared_ptr<const TgtNode>, TgtLeaf>;
  using Kids = std::vector<Child>;

  const Child& take(const Kids& kids, std::size_t& pos) {
    if (pos >= kids.size()) throw EvalError("target expression is incomplete");
    return kids[pos++];
  }

  static const TgtNode* as_node(const Child& c) {
    const auto* p = std::get_if<std::shared_ptr<const TgtNode>>(&c);
    return p ? p->get() : nullptr;
  }

  static const TgtLeaf* as_leaf(const Child& c) {
    return std::get_if<TgtLeaf>(&c);
  }

  const SymbolInfo* leaf_info(const Child& c) const {
    const TgtLeaf* leaf = as_leaf(c);
    if (!leaf || leaf->kind != TgtLeaf::Kind::Name) return nullptr;
    return lookup_symbol(leaf->name);
  }

  std::int64_t int_arg(const Kids& kids, std::size_t& pos) {
    const Child& c = take(kids, pos);
    if (const TgtLeaf* leaf = as_leaf(c);
        leaf && leaf->kind == TgtLeaf::Kind::Int)
      return leaf->value;
    if (const TgtNode* n = as_node(c);
        n && n->label.category == NtCategory::Int)
      return std::get<std::int64_t>(eval_node(*n));
    throw EvalError("expected an integer");
  }

  PeriodAmount amount_arg(const Kids& kids, std::size_t& pos) {
    if (pos < kids.size()) {
      if (const SymbolInfo* i = leaf_info(kids[pos]);
          i && i->kind == SymbolKind::Unspecified) {
        ++pos;
        return {true, 0};
      }
    }
    return {false, int_arg(kids, pos)};
  }

  TimeUnit unit_arg(const Kids& kids, std::size_t& pos) {
    const Child& c = take(kids, pos);
    if (const SymbolInfo* i = leaf_info(c); i && i->kind == SymbolKind::UnitName)
      return static_cast<TimeUnit>(i->code);
    if (const TgtNode* n = as_node(c);
        n && n->label.category == NtCategory::Unit)
      return std::get<TimeUnit>(eval_node(*n));
    throw EvalError("expected a unit");
  }

  void merge_into(FieldMap& map, const FieldMap& other) {
    for (const auto& [f, v] : other.numeric) map.set_numeric(f, v);
    if (other.pod) map.set_pod(*other.pod);
    if (other.season) map.set_season(*other.season);
  }

  void field_into(const Kids& kids, std::size_t& pos, FieldMap& map) {
    const Child& c = take(kids, pos);
    if (const TgtNode* n = as_node(c);
        n && n->label.category == NtCategory::Field) {
      merge_into(map, std::get<FieldMap>(eval_node(*n)));
      return;
    }
    const SymbolInfo* i = leaf_info(c);
    if (!i || i->kind != SymbolKind::FieldName)
      throw EvalError("expected a field");
    const CalField field = static_cast<CalField>(i->code);
    if (field == CalField::PartOfDay) {
      const SymbolInfo* vi = leaf_info(take(kids, pos));
      if (!vi || vi->kind != SymbolKind::PodConstant)
        throw EvalError("PartOfDay takes a part-of-day constant");
      map.set_pod(static_cast<PartOfDay>(vi->code));
      return;
    }
    if (field == CalField::SeasonOfYear) {
      const SymbolInfo* vi = leaf_info(take(kids, pos));
      if (!vi || vi->kind != SymbolKind::SeasonConstant)
        throw EvalError("SeasonOfYear takes a season constant");
      map.set_season(static_cast<Season>(vi->code));
      return;
    }
    map.set_numeric(field, int_arg(kids, pos));
  }

  FieldMap field_one(const Kids& kids, std::size_t& pos) {
    FieldMap map;
    field_into(kids, pos, map);
    return map;
  }

  PeriodObject period_expr(const Kids& kids, std::size_t& pos) {
    const Child& c = take(kids, pos);
    if (const TgtNode* n = as_node(c);
        n && n->label.category == NtCategory::Period)
      return std::get<PeriodObject>(eval_node(*n));
    const SymbolInfo* i = leaf_info(c);
    if (!i || i->kind != SymbolKind::PeriodOperator)
      throw EvalError("expected a period expression");
    if (i->name == "Simple") {
      const PeriodAmount amount = amount_arg(kids, pos);
      const TimeUnit unit = unit_arg(kids, pos);
      PeriodObject p;
      p.units[static_cast<std::size_t>(unit)] = amount;
      return p;
    }
    if (i->name == "Sum") {
      PeriodObject a = period_expr(kids, pos);
      const PeriodObject b = period_expr(kids, pos);
      for (std::size_t u = 0; u < a.units.size(); ++u) {
        if (!b.units[u]) continue;
        if (!a.units[u]) {
          a.units[u] = b.units[u];
        } else if (a.units[u]->is_x || b.units[u]->is_x) {
          a.units[u] = PeriodAmount{true, 0};
        } else {
          a.units[u]->value += b.units[u]->value;
        }
      }
      a.recurring = a.recurring || b.recurring;
      return a;
    }
    // SetOf
    PeriodObject p = period_expr(kids, pos);
    p.recurring = true;
    return p;
  }

  TimeSpanObject span_expr(const Kids& kids, std::size_t& pos) {
    const Child& c = take(kids, pos);
    if (const TgtNode* n = as_node(c);
        n && n->label.category == NtCategory::TimeSpan) {
      EvalValue v = eval_node(*n);
      if (const auto* span = std::get_if<TimeSpanObject>(&v)) return *span;
      throw EvalError("references cannot anchor further operators");
    }
    const SymbolInfo* i = leaf_info(c);
    if (!i || i->kind != SymbolKind::SpanOperator)
      throw EvalError("expected a time span expression");
    switch (i->code) {
      case 0:
        return present_span(anchor_, config_);
      case 1:
        return find_absolute(field_one(kids, pos), config_);
      case 2: {
        const TimeSpanObject ts = span_expr(kids, pos);
        return find_earlier(ts, field_one(kids, pos), config_);
      }
      case 3: {
        const TimeSpanObject ts = span_expr(kids, pos);
        return find_later(ts, field_one(kids, pos), config_);
      }
      case 4: {
        const TimeSpanObject ts = span_expr(kids, pos);
        return find_enclosing(ts, unit_arg(kids, pos), config_);
      }
      case 5: {
        const TimeSpanObject ts = span_expr(kids, pos);
        return find_within(ts, field_one(kids, pos), config_);
      }
      case 6: {
        const TimeSpanObject ts = span_expr(kids, pos);
        return move_span(ts, period_expr(kids, pos), -1);
      }
      case 7: {
        const TimeSpanObject ts = span_expr(kids, pos);
        return move_span(ts, period_expr(kids, pos), 1);
      }
      case 8: {
        const TimeSpanObject ts = span_expr(kids, pos);
        return start_at_end_of(ts, period_expr(kids, pos));
      }
      case 9: {
        const TimeSpanObject ts = span_expr(kids, pos);
        return end_at_start_of(ts, period_expr(kids, pos));
      }
      case 10: {
        const TimeSpanObject ts = span_expr(kids, pos);
        return underspecified_span(ts, unit_arg(kids, pos));
      }
      default:
        throw EvalError("unknown span operator");
    }
  }

  EvalValue span_or_ref(const Kids& kids, std::size_t& pos) {
    if (pos < kids.size()) {
      if (const SymbolInfo* i = leaf_info(kids[pos]);
          i && i->kind == SymbolKind::RefConstant) {
        ++pos;
        return RefObject{i->code - 1};  // PastRef 0 -> -1, FutureRef 2 -> +1
      }
    }
    return span_expr(kids, pos);
  }
};

}  // namespace

TemporalObject evaluate(const TgtNode& target, const Anchor& anchor,
                        const GrammarConfig& config) {
  TreeEval eval(anchor, config);
  EvalValue v = eval.eval_node(target);
  if (auto* span = std::get_if<TimeSpanObject>(&v)) return std::move(*span);
  if (auto* period = std::get_if<PeriodObject>(&v)) return std::move(*period);
  if (auto* ref = std::get_if<RefObject>(&v)) return *ref;
  throw EvalError("parse root is not a time span or period");
}

namespace {

std::string format_span(const TimeSpanObject& ts) {
  const CivilDate d = civil_from_days(ts.start.day);
  const auto under = [&](CalField f) {
    return std::find(ts.underspecified.begin(), ts.underspecified.end(), f) !=
           ts.underspecified.end();
  };
  char buf[64];
  auto two = [&](int v, bool x) {
    if (x) return std::string("XX");
    std::snprintf(buf, sizeof(buf), "%02d", v);
    return std::string(buf);
  };
  std::snprintf(buf, sizeof(buf), "%04d", d.year);
  const std::string year = buf;
  const std::string month = two(d.month, under(CalField::MonthOfYear));
  const std::string day = two(d.day, under(CalField::DayOfMonth));
  const std::string hour =
      two(ts.start.sec / 3600, under(CalField::HourOfDay));
  const std::string minute =
      two((ts.start.sec / 60) % 60, under(CalField::MinuteOfHour));
  const std::string second =
      two(ts.start.sec % 60, under(CalField::SecondOfMinute));

  switch (ts.granularity) {
    case Granularity::Century:
      std::snprintf(buf, sizeof(buf), "%02d",
                    static_cast<int>(floor_div(d.year, 100)));
      return buf;
    case Granularity::Decade:
      std::snprintf(buf, sizeof(buf), "%03d",
                    static_cast<int>(floor_div(d.year, 10)));
      return buf;
    case Granularity::Year:
      return year;
    case Granularity::Quarter:
      if (ts.season) {
        static constexpr std::array<const char*, 4> kCodes = {"SP", "SU",
                                                              "FA", "WI"};
        return year + "-" +
               kCodes[static_cast<std::size_t>(*ts.season)];
      }
      return year + "-Q" + std::to_string((d.month - 1) / 3 + 1);
    case Granularity::Month:
      return year + "-" + month;
    case Granularity::Week: {
      const IsoWeek w = iso_week_of(ts.start.day);
      std::snprintf(buf, sizeof(buf), "%04d-W%02d", w.year, w.week);
      return buf;
    }
    case Granularity::Day:
      return year + "-" + month + "-" + day;
    case Granularity::PartOfDay: {
      static constexpr std::array<const char*, 5> kCodes = {"MO", "MD", "AF",
                                                            "EV", "NI"};
      const std::string code =
          ts.part_of_day
              ? kCodes[static_cast<std::size_t>(*ts.part_of_day)]
              : "XX";
      return year + "-" + month + "-" + day + "T" + code;
    }
    case Granularity::Hour:
      return year + "-" + month + "-" + day + "T" + hour;
    case Granularity::Minute:
      return year + "-" + month + "-" + day + "T" + hour + ":" + minute;
    case Granularity::Second:
      return year + "-" + month + "-" + day + "T" + hour + ":" + minute + ":" +
             second;
    case Granularity::Unspecified:
      break;
  }
  throw EvalError("span has no granularity");
}

std::string format_period(const PeriodObject& p) {
  static constexpr std::array<const char*, 10> kSuffix = {
      "CE", "DE", "Y", "Q", "M", "W", "D", "H", "M", "S"};
  std::string out = "P";
  bool t_written = false;
  bool any = false;
  for (std::size_t u = 0; u < p.units.size(); ++u) {
    if (!p.units[u]) continue;
    if (u >= 7 && !t_written) {
      out += 'T';
      t_written = true;
    }
    out += p.units[u]->is_x ? "X" : std::to_string(p.units[u]->value);
    out += kSuffix[u];
    any = true;
  }
  if (!any) throw EvalError("empty period");
  return out;
}

}  // namespace

std::string to_timeml(const TemporalObject& obj) {
  if (const auto* span = std::get_if<TimeSpanObject>(&obj))
    return format_span(*span);
  if (const auto* period = std::get_if<PeriodObject>(&obj))
    return format_period(*period);
  const RefObject& ref = std::get<RefObject>(obj);
  if (ref.direction < 0) return "PAST_REF";
  if (ref.direction > 0) return "FUTURE_REF";
  return "PRESENT_REF";
}

TimexType object_type(const TemporalObject& obj) {
  if (const auto* period = std::get_if<PeriodObject>(&obj))
    return period->recurring ? TimexType::Set : TimexType::Duration;
  if (const auto* span = std::get_if<TimeSpanObject>(&obj)) {
    switch (span->granularity) {
      case Granularity::PartOfDay:
      case Granularity::Hour:
      case Granularity::Minute:
      case Granularity::Second:
        return TimexType::Time;
      default:
        return TimexType::Date;
    }
  }
  return TimexType::Date;
}

std::vector<SyncParse> rank_parses(std::vector<SyncParse> parses,
                                   const Anchor& anchor,
                                   const Grammar& grammar) {
  struct Entry {
    std::size_t idx;
    int nil;
    int rule;
    std::string src, tgt;
    int cls = 3;  // 0 evaluable, 1 later span, 2 failed, 3 not evaluated
    std::int64_t dist = 0;
  };
  std::vector<Entry> entries;
  entries.reserve(parses.size());
  for (std::size_t i = 0; i < parses.size(); ++i) {
    entries.push_back({i, parses[i].nil_tokens, parses[i].rule_id,
                       render_source(*parses[i].source),
                       render_target(*parses[i].target)});
  }
  auto pre_key = [](const Entry& e) {
    return std::tie(e.nil, e.rule, e.src, e.tgt);
  };
  std::sort(entries.begin(), entries.end(),
            [&](const Entry& a, const Entry& b) { return pre_key(a) < pre_key(b); });

  const Instant at = anchor.instant();
  const std::size_t budget = std::min<std::size_t>(entries.size(), 32);
  for (std::size_t i = 0; i < budget; ++i) {
    Entry& e = entries[i];
    try {
      const TemporalObject obj =
          evaluate(*parses[e.idx].target, anchor, grammar.config);
      if (const auto* span = std::get_if<TimeSpanObject>(&obj)) {
        e.cls = span->start > at ? 1 : 0;
        e.dist = span->start.total_seconds() - at.total_seconds();
        if (e.dist < 0) e.dist = -e.dist;
      } else {
        e.cls = 0;
        e.dist = 0;
      }
    } catch (const EvalError&) {
      e.cls = 2;
      e.dist = 0;
    }
  }
  std::sort(entries.begin(), entries.end(),
            [&](const Entry& a, const Entry& b) {
              return std::tie(a.nil, a.cls, a.dist, a.rule, a.src, a.tgt) <
                     std::tie(b.nil, b.cls, b.dist, b.rule, b.src, b.tgt);
            });
  std::vector<SyncParse> out;
  out.reserve(parses.size());
  for (const Entry& e : entries) out.push_back(std::move(parses[e.idx]));
  return out;
}

NormalizeOutcome normalize(std::string_view text, const Anchor& anchor,
                           const Grammar& grammar) {
  NormalizeOutcome outcome;
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.empty()) {
    outcome.status = NormalizeOutcome::Status::ParseFailure;
    outcome.diagnostic = "no tokens";
    return outcome;
  }
  ParseResult result = parse(tokens, grammar);
  if (!result.ok()) {
    outcome.status = NormalizeOutcome::Status::ParseFailure;
    std::string diag = "no parse covers the input";
    if (!result.partial_spans.empty()) {
      diag += "; partial:";
      for (const TokenSpan& s : result.partial_spans)
        diag += " [" + std::to_string(s.begin) + "," + std::to_string(s.end) +
                ")";
    }
    outcome.diagnostic = diag;
    return outcome;
  }
  const std::vector<SyncParse> ranked =
      rank_parses(std::move(result.parses), anchor, grammar);
  std::string first_error;
  const std::size_t budget = std::min<std::size_t>(ranked.size(), 32);
  for (std::size_t i = 0; i < budget; ++i) {
    try {
      const TemporalObject obj =
          evaluate(*ranked[i].target, anchor, grammar.config);
      outcome.status = NormalizeOutcome::Status::Ok;
      outcome.value = to_timeml(obj);
      outcome.type = object_type(obj);
      outcome.parse = ranked[i];
      return outcome;
    } catch (const EvalError& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }
  outcome.status = NormalizeOutcome::Status::EvalFailure;
  outcome.diagnostic =
      first_error.empty() ? "evaluation failed" : first_error;
  return outcome;
}

}  // namespace timextk
