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

#include "timextk/pipeline.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "timextk/token.hpp"

namespace timextk {

std::vector<NormalizeOutcome> normalize_batch_serial(
    const std::vector<BatchItem>& items, const Grammar& grammar) {
  std::vector<NormalizeOutcome> out(items.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    out[i] = normalize(items[i].text, items[i].anchor, grammar);
  return out;
}

std::vector<NormalizeOutcome> normalize_batch(
    const std::vector<BatchItem>& items, const Grammar& grammar,
    int workers) {
  std::vector<NormalizeOutcome> out(items.size());
#ifdef _OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (std::size_t i = 0; i < items.size(); ++i)
    out[i] = normalize(items[i].text, items[i].anchor, grammar);
#else
  (void)workers;
  out = normalize_batch_serial(items, grammar);
#endif
  return out;
}

std::vector<Timex> filter_unnormalizable(const std::vector<Timex>& timexes,
                                         const Grammar& grammar,
                                         const Anchor& anchor) {
  std::vector<Timex> out;
  for (const Timex& t : timexes) {
    const NormalizeOutcome outcome = normalize(t.text, anchor, grammar);
    if (!outcome.ok()) continue;
    Timex kept = t;
    kept.value = outcome.value;
    kept.type = outcome.type;
    out.push_back(std::move(kept));
  }
  return out;
}

namespace {

// Rebuilds Token records (joined offsets, numeric values) from row text.
std::vector<Token> rows_to_tokens(const std::vector<TabRow>& rows) {
  std::vector<Token> out;
  out.reserve(rows.size());
  std::size_t at = 0;
  for (const TabRow& row : rows) {
    Token t;
    t.text = row.token;
    t.begin = at;
    t.end = at + row.token.size();
    at = t.end + 1;
    const std::vector<Token> inner = tokenize(row.token);
    if (inner.size() == 1) t.numeric = inner[0].numeric;
    out.push_back(std::move(t));
  }
  return out;
}

struct Entity {
  Detection detection;
  std::string value = "-";
};

TabulatedDocument empty_prediction(const TabulatedDocument& doc) {
  TabulatedDocument out;
  out.doc_id = doc.doc_id;
  out.anchor = doc.anchor;
  out.lang = doc.lang;
  out.rows.reserve(doc.rows.size());
  for (const TabRow& row : doc.rows)
    out.rows.push_back({row.token, {'O', TimexType::Date}, "-"});
  return out;
}

void process_document(const TabulatedDocument& doc,
                      const std::map<std::string, Grammar>& grammars,
                      const std::map<std::string, Lexicon>& lexicons,
                      const std::string& default_lang,
                      const PipelineOptions& options,
                      TabulatedDocument& prediction, DocReport& report) {
  report.doc_id = doc.doc_id;
  prediction = empty_prediction(doc);

  const std::string lang = doc.lang.empty() ? default_lang : doc.lang;
  const auto grammar_it = grammars.find(lang);
  if (grammar_it == grammars.end()) {
    report.ok = false;
    report.message = "no grammar for language " + lang;
    return;
  }
  const Grammar& grammar = grammar_it->second;

  const std::vector<Token> tokens = rows_to_tokens(doc.rows);
  std::vector<Detection> detections;
  if (options.source == DetectionSource::Baseline) {
    const auto lexicon_it = lexicons.find(lang);
    if (lexicon_it == lexicons.end()) {
      report.ok = false;
      report.message = "no lexicon for language " + lang;
      return;
    }
    detections = baseline_detect(tokens, lexicon_it->second);
  } else {
    std::vector<BioTag> tags;
    tags.reserve(doc.rows.size());
    for (const TabRow& row : doc.rows) tags.push_back(row.tag);
    detections = decode_spans(tags, &report.repairs);
  }
  report.detected = static_cast<int>(detections.size());

  std::vector<Entity> kept;
  for (const Detection& d : detections) {
    std::string text;
    for (int k = d.span.begin; k < d.span.end; ++k) {
      if (k > d.span.begin) text += ' ';
      text += tokens[static_cast<std::size_t>(k)].text;
    }
    const NormalizeOutcome outcome = normalize(text, doc.anchor, grammar);
    if (outcome.ok()) {
      ++report.normalized;
      kept.push_back({{d.span, outcome.type}, outcome.value});
    } else if (options.mode == PipelineMode::DetectionFocused) {
      kept.push_back({{d.span, d.type}, "-"});
    } else {
      ++report.dropped;
    }
  }

  for (const Entity& e : kept) {
    for (int k = e.detection.span.begin; k < e.detection.span.end; ++k) {
      TabRow& row = prediction.rows[static_cast<std::size_t>(k)];
      row.tag = {k == e.detection.span.begin ? 'B' : 'I', e.detection.type};
      row.value = e.value;
    }
  }
}

}  // namespace

PipelineResult run_pipeline(const std::vector<TabulatedDocument>& input,
                            const std::map<std::string, Grammar>& grammars,
                            const std::map<std::string, Lexicon>& lexicons,
                            const std::string& default_lang,
                            const PipelineOptions& options) {
  PipelineResult result;
  result.predictions.resize(input.size());
  result.reports.resize(input.size());

  auto run_one = [&](std::size_t i) {
    try {
      process_document(input[i], grammars, lexicons, default_lang, options,
                       result.predictions[i], result.reports[i]);
    } catch (const std::exception& e) {
      result.predictions[i] = empty_prediction(input[i]);
      result.reports[i].doc_id = input[i].doc_id;
      result.reports[i].ok = false;
      result.reports[i].message = e.what();
    }
  };

#ifdef _OPENMP
  const int threads =
      options.workers > 0 ? options.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < input.size(); ++i) run_one(i);
#else
  for (std::size_t i = 0; i < input.size(); ++i) run_one(i);
#endif
  return result;
}

}  // namespace timextk
