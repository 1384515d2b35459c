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

#include <map>
#include <string>
#include <vector>

#include "timextk/corpus.hpp"
#include "timextk/detection.hpp"
#include "timextk/grammar.hpp"
#include "timextk/temporal.hpp"

namespace timextk {

// Detection-focused keeps every detected extent, attaching "-" when
// normalization fails; normalization-focused drops the failures.
enum class PipelineMode { DetectionFocused, NormalizationFocused };

enum class DetectionSource { Baseline, ExternalTags };

struct PipelineOptions {
  PipelineMode mode = PipelineMode::DetectionFocused;
  DetectionSource source = DetectionSource::ExternalTags;
  int workers = 0;  // 0 lets the runtime pick; 1 forces serial
};

struct BatchItem {
  std::string text;
  Anchor anchor;
};

// Reference implementation and its parallel twin; results are indexed by
// input position so both return identical vectors.
std::vector<NormalizeOutcome> normalize_batch_serial(
    const std::vector<BatchItem>& items, const Grammar& grammar);
std::vector<NormalizeOutcome> normalize_batch(
    const std::vector<BatchItem>& items, const Grammar& grammar,
    int workers = 0);

// Keeps exactly the timexes that normalize, attaching value and derived
// type; order preserved. The normalization-focused filter.
std::vector<Timex> filter_unnormalizable(const std::vector<Timex>& timexes,
                                         const Grammar& grammar,
                                         const Anchor& anchor);

struct DocReport {
  std::string doc_id;
  bool ok = true;
  std::string message;
  int detected = 0;
  int normalized = 0;
  int dropped = 0;  // detections removed by the normalization-focused mode
  int repairs = 0;  // BIO repairs during external-tag ingest
};

struct PipelineResult {
  std::vector<TabulatedDocument> predictions;
  std::vector<DocReport> reports;
};

// Detect (baseline lexicon or the documents' own tags), normalize every
// extent against the document anchor, filter by mode, and emit tabulated
// predictions over the same token streams. Documents whose language has
// no grammar (or whose processing throws) come back with every row O and
// a failed report; the run always completes.
PipelineResult run_pipeline(const std::vector<TabulatedDocument>& input,
                            const std::map<std::string, Grammar>& grammars,
                            const std::map<std::string, Lexicon>& lexicons,
                            const std::string& default_lang,
                            const PipelineOptions& options);

}  // namespace timextk
