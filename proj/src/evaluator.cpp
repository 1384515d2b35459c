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

#include "timextk/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "timextk/value.hpp"

namespace timextk {

namespace {

void check_no_overlap(const std::vector<Timex>& list, const char* side) {
  std::vector<TokenSpan> spans;
  spans.reserve(list.size());
  for (const Timex& t : list) spans.push_back(t.token_span);
  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i - 1].overlaps(spans[i]))
      throw EvaluatorError(std::string(side) + " spans overlap: [" +
                           std::to_string(spans[i - 1].begin) + "," +
                           std::to_string(spans[i - 1].end) + ") and [" +
                           std::to_string(spans[i].begin) + "," +
                           std::to_string(spans[i].end) + ")");
  }
}

std::vector<std::size_t> order_by_span(const std::vector<Timex>& list) {
  std::vector<std::size_t> idx(list.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return list[a].token_span < list[b].token_span;
  });
  return idx;
}

}  // namespace

MatchSet match(const std::vector<Timex>& gold, const std::vector<Timex>& pred) {
  check_no_overlap(gold, "gold");
  check_no_overlap(pred, "pred");
  MatchSet ms;
  const std::vector<std::size_t> gold_order = order_by_span(gold);
  const std::vector<std::size_t> pred_order = order_by_span(pred);
  std::vector<bool> gold_taken(gold.size(), false);
  for (const std::size_t p : pred_order) {
    bool paired = false;
    for (const std::size_t g : gold_order) {
      if (gold_taken[g]) continue;
      if (!gold[g].token_span.overlaps(pred[p].token_span)) continue;
      gold_taken[g] = true;
      ms.pairs.push_back({g, p, gold[g].token_span == pred[p].token_span});
      paired = true;
      break;
    }
    if (!paired) ms.unmatched_pred.push_back(p);
  }
  for (const std::size_t g : gold_order)
    if (!gold_taken[g]) ms.unmatched_gold.push_back(g);
  return ms;
}

bool value_correct(const std::optional<std::string>& gold,
                   const std::optional<std::string>& pred) {
  if (!gold || !pred) return false;
  if (gold->size() != pred->size()) return false;
  for (std::size_t i = 0; i < gold->size(); ++i) {
    if (std::toupper(static_cast<unsigned char>((*gold)[i])) !=
        std::toupper(static_cast<unsigned char>((*pred)[i])))
      return false;
  }
  return true;
}

MatchCounts& MatchCounts::operator+=(const MatchCounts& o) {
  gold += o.gold;
  pred += o.pred;
  relaxed += o.relaxed;
  strict += o.strict;
  type_correct += o.type_correct;
  value_correct += o.value_correct;
  strict_value_correct += o.strict_value_correct;
  return *this;
}

MatchCounts count_matches(const std::vector<Timex>& gold,
                          const std::vector<Timex>& pred, const MatchSet& ms) {
  MatchCounts c;
  c.gold = static_cast<std::int64_t>(gold.size());
  c.pred = static_cast<std::int64_t>(pred.size());
  for (const MatchSet::Pair& pair : ms.pairs) {
    const Timex& g = gold[pair.gold];
    const Timex& p = pred[pair.pred];
    ++c.relaxed;
    if (pair.strict) ++c.strict;
    if (g.type == p.type) ++c.type_correct;
    if (value_correct(g.value, p.value)) {
      ++c.value_correct;
      if (pair.strict) ++c.strict_value_correct;
    }
  }
  return c;
}

namespace {

double pct(std::int64_t n, std::int64_t d) {
  return d > 0 ? 100.0 * static_cast<double>(n) / static_cast<double>(d) : 0.0;
}

double f1(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

}  // namespace

Metrics score(const MatchCounts& c) {
  Metrics m;
  m.relaxed_p = pct(c.relaxed, c.pred);
  m.relaxed_r = pct(c.relaxed, c.gold);
  m.relaxed_f1 = f1(m.relaxed_p, m.relaxed_r);
  m.strict_p = pct(c.strict, c.pred);
  m.strict_r = pct(c.strict, c.gold);
  m.strict_f1 = f1(m.strict_p, m.strict_r);
  const double type_factor =
      c.relaxed > 0 ? static_cast<double>(c.type_correct) /
                          static_cast<double>(c.relaxed)
                    : 0.0;
  m.type_p = m.relaxed_p * type_factor;
  m.type_r = m.relaxed_r * type_factor;
  m.type_f1 = f1(m.type_p, m.type_r);
  const double value_factor =
      c.relaxed > 0 ? static_cast<double>(c.value_correct) /
                          static_cast<double>(c.relaxed)
                    : 0.0;
  m.value_p = m.relaxed_p * value_factor;
  m.value_r = m.relaxed_r * value_factor;
  m.value_f1 = f1(m.value_p, m.value_r);
  m.gold_value_accuracy = pct(c.strict_value_correct, c.gold);
  return m;
}

std::string to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::FalsePositive: return "false positive";
    case ErrorCategory::NotDetected: return "not detected";
    case ErrorCategory::WrongSpan: return "wrong span";
    case ErrorCategory::WrongType: return "wrong type";
    case ErrorCategory::LackOfRules: return "lack of rules";
    case ErrorCategory::EquivalentValue: return "equivalent value";
    case ErrorCategory::WrongValueClass: return "wrong value class";
    case ErrorCategory::WrongUnderspecified:
      return "wrong underspecified time span";
    case ErrorCategory::WrongDisambiguation:
      return "wrong temporal disambiguation";
    case ErrorCategory::Other: return "other";
  }
  return "other";
}

namespace {

std::optional<ErrorCategory> pair_category(const Timex& gold,
                                           const Timex& pred, bool strict) {
  if (!strict) return ErrorCategory::WrongSpan;
  if (gold.type != pred.type) return ErrorCategory::WrongType;
  if (value_correct(gold.value, pred.value)) return std::nullopt;
  if (!gold.value) return std::nullopt;  // nothing to judge the value against
  if (!pred.value) return ErrorCategory::LackOfRules;
  if (values_equivalent(*gold.value, *pred.value))
    return ErrorCategory::EquivalentValue;
  const ValueInfo g = classify_value(*gold.value);
  const ValueInfo p = classify_value(*pred.value);
  if (g.shape != p.shape) return ErrorCategory::WrongValueClass;
  if (g.underspecified != p.underspecified)
    return ErrorCategory::WrongUnderspecified;
  if (g.granularity == p.granularity && !g.underspecified &&
      !p.underspecified)
    return ErrorCategory::WrongDisambiguation;
  return ErrorCategory::Other;
}

}  // namespace

std::vector<ErrorRecord> error_report(const std::string& doc_id,
                                      const std::vector<Timex>& gold,
                                      const std::vector<Timex>& pred,
                                      const MatchSet& ms) {
  std::vector<ErrorRecord> out;
  for (const std::size_t p : ms.unmatched_pred)
    out.push_back({doc_id, ErrorCategory::FalsePositive, std::nullopt,
                   pred[p]});
  for (const std::size_t g : ms.unmatched_gold)
    out.push_back({doc_id, ErrorCategory::NotDetected, gold[g], std::nullopt});
  for (const MatchSet::Pair& pair : ms.pairs) {
    const auto category =
        pair_category(gold[pair.gold], pred[pair.pred], pair.strict);
    if (category)
      out.push_back({doc_id, *category, gold[pair.gold], pred[pair.pred]});
  }
  return out;
}

CorpusEvaluation evaluate_corpus(const std::vector<TabulatedDocument>& gold,
                                 const std::vector<TabulatedDocument>& pred) {
  std::map<std::string, const TabulatedDocument*> pred_by_id;
  for (const TabulatedDocument& doc : pred) {
    if (!pred_by_id.emplace(doc.doc_id, &doc).second)
      throw EvaluatorError("duplicate prediction document " + doc.doc_id);
  }
  CorpusEvaluation ev;
  std::map<std::string, bool> gold_seen;
  for (const TabulatedDocument& gdoc : gold) {
    if (!gold_seen.emplace(gdoc.doc_id, true).second)
      throw EvaluatorError("duplicate gold document " + gdoc.doc_id);
    const auto it = pred_by_id.find(gdoc.doc_id);
    if (it == pred_by_id.end())
      throw EvaluatorError("no prediction for document " + gdoc.doc_id);
    const TabulatedDocument& pdoc = *it->second;
    if (gdoc.rows.size() != pdoc.rows.size())
      throw EvaluatorError("document " + gdoc.doc_id + ": gold has " +
                           std::to_string(gdoc.rows.size()) +
                           " tokens, prediction has " +
                           std::to_string(pdoc.rows.size()));
    for (std::size_t i = 0; i < gdoc.rows.size(); ++i) {
      if (gdoc.rows[i].token != pdoc.rows[i].token)
        throw EvaluatorError("document " + gdoc.doc_id + ": token " +
                             std::to_string(i) + " differs: " +
                             gdoc.rows[i].token + " vs " + pdoc.rows[i].token);
    }
    const std::vector<Timex> gt = tabulated_timexes(gdoc);
    const std::vector<Timex> pt = tabulated_timexes(pdoc);
    const MatchSet ms = match(gt, pt);
    ev.counts += count_matches(gt, pt, ms);
    for (ErrorRecord& record : error_report(gdoc.doc_id, gt, pt, ms)) {
      ++ev.category_counts[record.category];
      ev.errors.push_back(std::move(record));
    }
    ++ev.documents;
  }
  for (const TabulatedDocument& pdoc : pred) {
    if (!gold_seen.count(pdoc.doc_id))
      throw EvaluatorError("prediction document " + pdoc.doc_id +
                           " has no gold counterpart");
  }
  ev.metrics = score(ev.counts);
  return ev;
}

std::string render_metrics(const Metrics& m) {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof(buf),
                "Rel P    Rel R    Rel F1   Rel TF1  Rel VP   Rel VR   Rel VF1\n"
                "%-8.2f %-8.2f %-8.2f %-8.2f %-8.2f %-8.2f %-8.2f\n",
                m.relaxed_p, m.relaxed_r, m.relaxed_f1, m.type_f1, m.value_p,
                m.value_r, m.value_f1);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "Strict P %.2f  Strict R %.2f  Strict F1 %.2f\n",
                m.strict_p, m.strict_r, m.strict_f1);
  out += buf;
  std::snprintf(buf, sizeof(buf), "Gold value accuracy %.2f\n",
                m.gold_value_accuracy);
  out += buf;
  return out;
}

std::string render_report_json(const CorpusEvaluation& ev) {
  nlohmann::json j;
  const Metrics& m = ev.metrics;
  j["metrics"] = {
      {"relaxed", {{"p", m.relaxed_p}, {"r", m.relaxed_r}, {"f1", m.relaxed_f1}}},
      {"strict", {{"p", m.strict_p}, {"r", m.strict_r}, {"f1", m.strict_f1}}},
      {"type", {{"p", m.type_p}, {"r", m.type_r}, {"f1", m.type_f1}}},
      {"value", {{"p", m.value_p}, {"r", m.value_r}, {"f1", m.value_f1}}},
      {"gold_value_accuracy", m.gold_value_accuracy},
  };
  j["counts"] = {
      {"gold", ev.counts.gold},
      {"pred", ev.counts.pred},
      {"relaxed_matches", ev.counts.relaxed},
      {"strict_matches", ev.counts.strict},
      {"type_correct", ev.counts.type_correct},
      {"value_correct", ev.counts.value_correct},
      {"documents", ev.documents},
  };
  nlohmann::json categories = nlohmann::json::object();
  for (const auto& [category, count] : ev.category_counts)
    categories[to_string(category)] = count;
  j["error_counts"] = categories;
  nlohmann::json errors = nlohmann::json::array();
  for (const ErrorRecord& record : ev.errors) {
    nlohmann::json e;
    e["doc_id"] = record.doc_id;
    e["category"] = to_string(record.category);
    auto side = [](const Timex& t) {
      nlohmann::json s;
      s["span"] = {t.token_span.begin, t.token_span.end};
      s["text"] = t.text;
      s["type"] = to_string(t.type);
      s["value"] = t.value ? nlohmann::json(*t.value) : nlohmann::json();
      return s;
    };
    if (record.gold) e["gold"] = side(*record.gold);
    if (record.pred) e["pred"] = side(*record.pred);
    errors.push_back(std::move(e));
  }
  j["errors"] = std::move(errors);
  return j.dump(2);
}

}  // namespace timextk
