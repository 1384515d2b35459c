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

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "timextk/detection.hpp"
#include "timextk/types.hpp"

namespace timextk {

struct CorpusError : std::runtime_error {
  explicit CorpusError(const std::string& msg) : std::runtime_error(msg) {}
};

// One line of the tabulated exchange format. `value` is "-" when the
// token carries no normalization (every O token, unnormalized entities).
struct TabRow {
  std::string token;
  BioTag tag;
  std::string value = "-";

  bool operator==(const TabRow&) const = default;
};

struct TabulatedDocument {
  std::string doc_id;
  Anchor anchor;
  std::string lang;  // empty when the document does not declare one
  std::vector<TabRow> rows;

  bool operator==(const TabulatedDocument&) const = default;
};

// A timex as read from markup: char offsets index the stripped text.
struct GoldTimex {
  CharSpan span;
  std::string text;
  TimexType type = TimexType::Date;
  std::optional<std::string> value;

  bool operator==(const GoldTimex&) const = default;
};

struct GoldDocument {
  std::string doc_id;
  Anchor anchor;
  std::string lang;
  std::string text;  // markup stripped, entities decoded
  std::vector<GoldTimex> timexes;  // body timexes in document order
  std::optional<GoldTimex> dct;    // the creation-time expression
};

// Scans angle-bracket markup for TIMEX3 elements. The anchor comes from
// the TIMEX3 marked functionInDocument="CREATION_TIME". When a TEXT
// element exists only its content counts as body text; a DOCID element
// provides the document id.
GoldDocument read_timeml(std::string_view doc);
GoldDocument read_timeml_file(const std::string& path);

// Tokenizes the stripped text and projects char spans onto tokens (a
// token belongs to a timex iff their ranges overlap). When two timexes
// claim one token the first wins; timexes left without tokens are
// dropped and counted into `conflicts`. The entity value is repeated on
// every row of the entity. With include_dct the creation-time expression
// is prepended as an ordinary tagged entity.
TabulatedDocument to_tabulated(const GoldDocument& gold,
                               bool include_dct = false,
                               int* conflicts = nullptr);

// Strict reader: exactly 3 tab-separated columns per row, headers
// `# doc_id = X` then `# anchor = ...` (optional `# lang = X`), a blank
// line ends each document. Validates the BIO sequence and that an
// entity's value column is constant. With repair=true orphan I tags and
// value inconsistencies are tolerated the way decode_spans repairs them.
std::vector<TabulatedDocument> read_tabulated(std::istream& in,
                                              bool repair = false);
std::vector<TabulatedDocument> read_tabulated_file(const std::string& path,
                                                   bool repair = false);

void write_tabulated(std::ostream& out, const TabulatedDocument& doc);
void write_tabulated(std::ostream& out,
                     const std::vector<TabulatedDocument>& docs);
std::string write_tabulated(const std::vector<TabulatedDocument>& docs);

// Entities of a tabulated document as timexes in tokenized coordinates.
// A "-" value reads back as unset.
std::vector<Timex> tabulated_timexes(const TabulatedDocument& doc);

}  // namespace timextk
