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

#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "support/corpus_gen.hpp"
#include "timextk/evaluator.hpp"

using namespace timextk;

namespace {

Timex tx(int begin, int end, TimexType type,
         std::optional<std::string> value = std::nullopt) {
  Timex t;
  t.token_span = {begin, end};
  t.type = type;
  t.value = std::move(value);
  return t;
}

}  // namespace

TEST_CASE("pairing is greedy over span order") {
  const std::vector<Timex> gold = {tx(0, 2, TimexType::Date),
                                   tx(4, 6, TimexType::Date),
                                   tx(8, 9, TimexType::Date)};
  const std::vector<Timex> pred = {tx(1, 5, TimexType::Date),
                                   tx(5, 6, TimexType::Date)};
  const MatchSet ms = match(gold, pred);
  // The wide prediction overlaps two golds and takes the first.
  REQUIRE(ms.pairs.size() == 2);
  CHECK(ms.pairs[0].gold == 0);
  CHECK(ms.pairs[0].pred == 0);
  CHECK_FALSE(ms.pairs[0].strict);
  CHECK(ms.pairs[1].gold == 1);
  CHECK(ms.pairs[1].pred == 1);
  REQUIRE(ms.unmatched_gold.size() == 1);
  CHECK(ms.unmatched_gold[0] == 2);
  CHECK(ms.unmatched_pred.empty());

  // Overlapping spans within one list are a caller error.
  CHECK_THROWS_AS(match({tx(0, 2, TimexType::Date), tx(1, 3, TimexType::Date)},
                        {}),
                  EvaluatorError);
  CHECK_THROWS_AS(match({}, {tx(0, 2, TimexType::Date),
                             tx(1, 3, TimexType::Date)}),
                  EvaluatorError);
}

TEST_CASE("value equality ignores case only") {
  CHECK(value_correct("P2D", "p2d"));
  CHECK(value_correct("2013-03-06", "2013-03-06"));
  CHECK_FALSE(value_correct("P2D", "P2D "));
  CHECK_FALSE(value_correct("P10Y", "P1DE"));  // equivalent but not equal
  CHECK_FALSE(value_correct(std::nullopt, "P2D"));
  CHECK_FALSE(value_correct("P2D", std::nullopt));
  CHECK_FALSE(value_correct(std::nullopt, std::nullopt));
}

TEST_CASE("the worked fixture scores exactly") {
  // 3 gold, 2 predictions: one exact in span, type and value, one
  // overlapping with the right type but the wrong value.
  const std::vector<Timex> gold = {
      tx(0, 2, TimexType::Date, "2013-03-06"),
      tx(3, 4, TimexType::Duration, "P2D"),
      tx(6, 7, TimexType::Date, "2013"),
  };
  const std::vector<Timex> pred = {
      tx(0, 2, TimexType::Date, "2013-03-06"),
      tx(3, 5, TimexType::Duration, "P3D"),
  };
  const MatchSet ms = match(gold, pred);
  const MatchCounts c = count_matches(gold, pred, ms);
  CHECK(c.gold == 3);
  CHECK(c.pred == 2);
  CHECK(c.relaxed == 2);
  CHECK(c.strict == 1);
  CHECK(c.type_correct == 2);
  CHECK(c.value_correct == 1);
  CHECK(c.strict_value_correct == 1);

  const Metrics m = score(c);
  CHECK(m.relaxed_p == doctest::Approx(100.0));
  CHECK(m.relaxed_r == doctest::Approx(200.0 / 3));
  CHECK(m.relaxed_f1 == doctest::Approx(80.0));
  CHECK(m.strict_p == doctest::Approx(50.0));
  CHECK(m.strict_r == doctest::Approx(100.0 / 3));
  CHECK(m.strict_f1 == doctest::Approx(40.0));
  CHECK(m.type_p == doctest::Approx(100.0));
  CHECK(m.type_f1 == doctest::Approx(80.0));
  CHECK(m.value_p == doctest::Approx(50.0));
  CHECK(m.value_r == doctest::Approx(100.0 / 3));
  CHECK(m.value_f1 == doctest::Approx(40.0));
  CHECK(m.gold_value_accuracy == doctest::Approx(100.0 / 3));

  const std::string rendered = render_metrics(m);
  CHECK(rendered.find("Rel P    Rel R    Rel F1") != std::string::npos);
  CHECK(rendered.find("100.00   66.67    80.00") != std::string::npos);
  CHECK(rendered.find("Strict P 50.00  Strict R 33.33  Strict F1 40.00") !=
        std::string::npos);
  CHECK(rendered.find("Gold value accuracy 33.33") != std::string::npos);
}

TEST_CASE("degenerate inputs score zero, identical inputs score 100") {
  const Metrics zero = score(count_matches({}, {}, match({}, {})));
  CHECK(zero.relaxed_f1 == 0.0);
  CHECK(zero.value_f1 == 0.0);
  CHECK(zero.gold_value_accuracy == 0.0);

  const std::vector<Timex> gold = {tx(0, 1, TimexType::Date, "2013")};
  const Metrics miss = score(count_matches(gold, {}, match(gold, {})));
  CHECK(miss.relaxed_p == 0.0);
  CHECK(miss.relaxed_r == 0.0);
  CHECK(miss.relaxed_f1 == 0.0);

  const std::vector<Timex> both = {tx(0, 1, TimexType::Date, "2013"),
                                   tx(2, 4, TimexType::Duration, "P2D")};
  const Metrics full = score(count_matches(both, both, match(both, both)));
  CHECK(full.relaxed_f1 == doctest::Approx(100.0));
  CHECK(full.strict_f1 == doctest::Approx(100.0));
  CHECK(full.type_f1 == doctest::Approx(100.0));
  CHECK(full.value_f1 == doctest::Approx(100.0));
  CHECK(full.gold_value_accuracy == doctest::Approx(100.0));
}

TEST_CASE("each discrepancy falls into its category") {
  auto category_of = [](const Timex& g, const Timex& p) {
    const std::vector<Timex> gold = {g};
    const std::vector<Timex> pred = {p};
    const auto report = error_report("d", gold, pred, match(gold, pred));
    REQUIRE(report.size() == 1);
    return report[0].category;
  };
  auto clean = [](const Timex& g, const Timex& p) {
    const std::vector<Timex> gold = {g};
    const std::vector<Timex> pred = {p};
    return error_report("d", gold, pred, match(gold, pred)).empty();
  };

  using C = ErrorCategory;
  // Span mismatch outranks everything else.
  CHECK(category_of(tx(0, 2, TimexType::Date, "2013"),
                    tx(0, 1, TimexType::Time, "P2D")) == C::WrongSpan);
  CHECK(category_of(tx(0, 2, TimexType::Date, "2013"),
                    tx(0, 2, TimexType::Time, "2013")) == C::WrongType);
  CHECK(category_of(tx(0, 2, TimexType::Date, "2013"),
                    tx(0, 2, TimexType::Date)) == C::LackOfRules);
  CHECK(category_of(tx(0, 2, TimexType::Duration, "P10Y"),
                    tx(0, 2, TimexType::Duration, "P1DE")) ==
        C::EquivalentValue);
  CHECK(category_of(tx(0, 2, TimexType::Date, "2013-03-06"),
                    tx(0, 2, TimexType::Date, "P2D")) == C::WrongValueClass);
  CHECK(category_of(tx(0, 2, TimexType::Date, "2013-03-06"),
                    tx(0, 2, TimexType::Date, "2013-XX-XX")) ==
        C::WrongUnderspecified);
  CHECK(category_of(tx(0, 2, TimexType::Date, "2013-03-06"),
                    tx(0, 2, TimexType::Date, "2013-03-07")) ==
        C::WrongDisambiguation);
  CHECK(category_of(tx(0, 2, TimexType::Date, "2013-03-06"),
                    tx(0, 2, TimexType::Date, "2013-03")) == C::Other);
  // Correct pairs and unannotated golds produce no record.
  CHECK(clean(tx(0, 2, TimexType::Date, "P2D"),
              tx(0, 2, TimexType::Date, "p2d")));
  CHECK(clean(tx(0, 2, TimexType::Date),
              tx(0, 2, TimexType::Date, "2013")));

  // Unmatched entries become false positives and misses.
  const auto report =
      error_report("d", {tx(0, 1, TimexType::Date, "2013")},
                   {tx(3, 4, TimexType::Date, "2013")},
                   match({tx(0, 1, TimexType::Date, "2013")},
                         {tx(3, 4, TimexType::Date, "2013")}));
  REQUIRE(report.size() == 2);
  CHECK(report[0].category == C::FalsePositive);
  CHECK_FALSE(report[0].gold.has_value());
  CHECK(report[1].category == C::NotDetected);
  CHECK_FALSE(report[1].pred.has_value());

  CHECK(to_string(C::WrongSpan) == "wrong span");
  CHECK(to_string(C::LackOfRules) == "lack of rules");
  CHECK(to_string(C::WrongUnderspecified) ==
        "wrong underspecified time span");
}

TEST_CASE("counting matches the straight-line oracle on random corpora") {
  std::mt19937 rng(31337);
  testgen::CorpusGen gen(rng);
  for (int round = 0; round < 400; ++round) {
    const testgen::DocPair pair = gen.doc_pair("doc");
    const std::vector<Timex> gold = tabulated_timexes(pair.gold);
    const std::vector<Timex> pred = tabulated_timexes(pair.pred);
    const MatchCounts c = count_matches(gold, pred, match(gold, pred));
    const testgen::OracleCounts oc = testgen::oracle_count(gold, pred);
    CHECK(c.gold == oc.gold);
    CHECK(c.pred == oc.pred);
    CHECK(c.relaxed == oc.relaxed);
    CHECK(c.strict == oc.strict);
    CHECK(c.type_correct == oc.type_ok);
    CHECK(c.value_correct == oc.value_ok);
    CHECK(c.strict_value_correct == oc.strict_value_ok);

    const Metrics m = score(c);
    const testgen::OracleMetrics om = testgen::oracle_score(oc);
    CHECK(m.relaxed_f1 == doctest::Approx(om.rf).epsilon(1e-12));
    CHECK(m.strict_f1 == doctest::Approx(om.sf).epsilon(1e-12));
    CHECK(m.type_f1 == doctest::Approx(om.tf).epsilon(1e-12));
    CHECK(m.value_f1 == doctest::Approx(om.vf).epsilon(1e-12));
    CHECK(m.gold_value_accuracy == doctest::Approx(om.gold_acc).epsilon(1e-12));

    // Structural identities of the metric family.
    CHECK(m.strict_p <= m.relaxed_p + 1e-12);
    CHECK(m.type_r <= m.relaxed_r + 1e-12);
    CHECK(m.value_p <= m.relaxed_p + 1e-12);
  }
}

TEST_CASE("corpus evaluation aligns documents by id") {
  std::mt19937 rng(17);
  testgen::CorpusGen gen(rng);
  std::vector<TabulatedDocument> gold;
  std::vector<TabulatedDocument> pred;
  MatchCounts expected;
  for (int i = 0; i < 20; ++i) {
    const testgen::DocPair pair = gen.doc_pair("doc" + std::to_string(i));
    gold.push_back(pair.gold);
    pred.push_back(pair.pred);
    const std::vector<Timex> gt = tabulated_timexes(pair.gold);
    const std::vector<Timex> pt = tabulated_timexes(pair.pred);
    expected += count_matches(gt, pt, match(gt, pt));
  }
  // Prediction order does not matter.
  std::reverse(pred.begin(), pred.end());
  const CorpusEvaluation ev = evaluate_corpus(gold, pred);
  CHECK(ev.documents == 20);
  CHECK(ev.counts == expected);
  int recorded = 0;
  for (const auto& [category, count] : ev.category_counts) recorded += count;
  CHECK(recorded == static_cast<int>(ev.errors.size()));

  // The JSON report carries the same numbers.
  const auto j = nlohmann::json::parse(render_report_json(ev));
  CHECK(j["counts"]["gold"].get<std::int64_t>() == expected.gold);
  CHECK(j["counts"]["documents"].get<int>() == 20);
  CHECK(j["metrics"]["relaxed"]["f1"].get<double>() ==
        doctest::Approx(ev.metrics.relaxed_f1));
  CHECK(j["errors"].is_array());
  CHECK(j["errors"].size() == ev.errors.size());
}

TEST_CASE("misaligned corpora are rejected with the first divergence") {
  std::mt19937 rng(18);
  testgen::CorpusGen gen(rng);
  const testgen::DocPair pair = gen.doc_pair("doc0");

  // Missing prediction document.
  CHECK_THROWS_WITH_AS(evaluate_corpus({pair.gold}, {}),
                       doctest::Contains("no prediction for document doc0"),
                       EvaluatorError);
  // Stray prediction document.
  TabulatedDocument stray = pair.pred;
  stray.doc_id = "other";
  CHECK_THROWS_WITH_AS(evaluate_corpus({pair.gold}, {pair.pred, stray}),
                       doctest::Contains("has no gold counterpart"),
                       EvaluatorError);
  // Duplicates on either side.
  CHECK_THROWS_AS(evaluate_corpus({pair.gold, pair.gold}, {pair.pred}),
                  EvaluatorError);
  CHECK_THROWS_AS(evaluate_corpus({pair.gold}, {pair.pred, pair.pred}),
                  EvaluatorError);
  // Token streams must agree: report position and both tokens.
  TabulatedDocument edited = pair.pred;
  edited.rows[1].token = "zzz";
  CHECK_THROWS_WITH_AS(evaluate_corpus({pair.gold}, {edited}),
                       doctest::Contains("token 1 differs"), EvaluatorError);
  TabulatedDocument shorter = pair.pred;
  shorter.rows.pop_back();
  CHECK_THROWS_WITH_AS(evaluate_corpus({pair.gold}, {shorter}),
                       doctest::Contains("tokens"), EvaluatorError);
}
