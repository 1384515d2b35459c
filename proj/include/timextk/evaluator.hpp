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

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "timextk/corpus.hpp"
#include "timextk/types.hpp"

namespace timextk {

struct EvaluatorError : std::runtime_error {
  explicit EvaluatorError(const std::string& msg) : std::runtime_error(msg) {}
};

// Greedy one-to-one pairing: predictions left to right, each taking the
// lowest-start unmatched gold whose token span overlaps.
struct MatchSet {
  struct Pair {
    std::size_t gold;
    std::size_t pred;
    bool strict;  // token spans identical
  };
  std::vector<Pair> pairs;
  std::vector<std::size_t> unmatched_gold;
  std::vector<std::size_t> unmatched_pred;
};

// Throws EvaluatorError when either list has overlapping spans.
MatchSet match(const std::vector<Timex>& gold, const std::vector<Timex>& pred);

// Value correctness is case-insensitive string equality of set values.
bool value_correct(const std::optional<std::string>& gold,
                   const std::optional<std::string>& pred);

// Micro-aggregated counts; add documents together, then score once.
struct MatchCounts {
  std::int64_t gold = 0;
  std::int64_t pred = 0;
  std::int64_t relaxed = 0;
  std::int64_t strict = 0;
  std::int64_t type_correct = 0;   // over relaxed matches
  std::int64_t value_correct = 0;  // over relaxed matches
  // strict matches whose value is correct; basis of gold-span accuracy
  std::int64_t strict_value_correct = 0;

  MatchCounts& operator+=(const MatchCounts& o);
  bool operator==(const MatchCounts&) const = default;
};

MatchCounts count_matches(const std::vector<Timex>& gold,
                          const std::vector<Timex>& pred, const MatchSet& ms);

// All percentages in [0, 100]; empty denominators score 0.
struct Metrics {
  double relaxed_p = 0, relaxed_r = 0, relaxed_f1 = 0;
  double strict_p = 0, strict_r = 0, strict_f1 = 0;
  double type_p = 0, type_r = 0, type_f1 = 0;
  double value_p = 0, value_r = 0, value_f1 = 0;
  double gold_value_accuracy = 0;  // strict value-correct / gold
};

Metrics score(const MatchCounts& counts);

// One category per discrepancy; a timex pair lands in the first category
// that applies, in this order.
enum class ErrorCategory {
  FalsePositive,       // unmatched prediction
  NotDetected,         // unmatched gold
  WrongSpan,           // relaxed match that is not strict
  WrongType,           // types differ
  LackOfRules,         // prediction carries no value
  EquivalentValue,     // values differ as strings but are equivalent
  WrongValueClass,     // value shapes differ (date vs period vs ref)
  WrongUnderspecified, // one value has X placeholders, the other does not
  WrongDisambiguation, // same shape and granularity, different instant
  Other,
};

std::string to_string(ErrorCategory c);

struct ErrorRecord {
  std::string doc_id;
  ErrorCategory category = ErrorCategory::Other;
  std::optional<Timex> gold;
  std::optional<Timex> pred;
};

std::vector<ErrorRecord> error_report(const std::string& doc_id,
                                      const std::vector<Timex>& gold,
                                      const std::vector<Timex>& pred,
                                      const MatchSet& ms);

struct CorpusEvaluation {
  MatchCounts counts;
  Metrics metrics;
  std::map<ErrorCategory, int> category_counts;
  std::vector<ErrorRecord> errors;
  int documents = 0;
};

// Aligns documents by doc_id and requires equal token streams; the first
// divergence is reported in the thrown EvaluatorError.
CorpusEvaluation evaluate_corpus(const std::vector<TabulatedDocument>& gold,
                                 const std::vector<TabulatedDocument>& pred);

// The metrics row plus strict metrics and accuracy, 2 decimal places.
std::string render_metrics(const Metrics& m);
// Machine-readable report: metrics, category counts, per-error records.
std::string render_report_json(const CorpusEvaluation& ev);

}  // namespace timextk
