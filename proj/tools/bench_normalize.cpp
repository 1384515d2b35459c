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

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "timextk/pipeline.hpp"

using namespace timextk;
using Clock = std::chrono::steady_clock;

namespace {

// Mixed workload resembling corpus frequencies: dates, durations,
// deictics, times, and a slice of parse failures.
std::vector<BatchItem> make_items(const std::string& lang, int count,
                                  unsigned seed) {
  static const std::vector<std::string> es = {
      "6 de marzo",        "dos días",          "ayer",
      "la semana pasada",  "14:30",             "el 6 de marzo de 2013",
      "los años 90",       "cada semana",       "hace dos semanas",
      "el próximo mes",    "tres años",         "esta noche",
      "hoy",               "2014",              "14/07/2000",
      "la primavera de 2013", "unos meses",     "sin fecha alguna",
  };
  static const std::vector<std::string> en = {
      "march 6",      "two days",    "yesterday",     "last week",
      "14:30",        "march 6 , 2013", "the 1990s",  "every two weeks",
      "two days ago", "next month",  "three years",   "tonight",
      "today",        "2014",        "spring of 2013", "no date here",
  };
  const auto& pool = lang == "es" ? es : en;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
  std::uniform_int_distribution<int> year(1990, 2030);
  std::uniform_int_distribution<int> month(1, 12);
  std::uniform_int_distribution<int> day(1, 28);
  std::vector<BatchItem> items;
  items.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year(rng), month(rng), day(rng));
    items.push_back({pool[static_cast<std::size_t>(pick(rng))], *parse_anchor(buf)});
  }
  return items;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark serial vs parallel batch normalization"};
  std::string lang = "es", grammar_path;
  int count = 10000, workers = 0, repeats = 3;
  app.add_option("--lang", lang, "Language code");
  app.add_option("--grammar", grammar_path, "Grammar file override");
  app.add_option("--count", count, "Batch size");
  app.add_option("--workers", workers, "Worker threads for the parallel run");
  app.add_option("--repeats", repeats, "Timing repetitions, best is reported");
  CLI11_PARSE(app, argc, argv);

  if (grammar_path.empty()) {
    const char* env = std::getenv("TIMEXTK_DATA");
    grammar_path = (env ? std::string(env) : std::string("data")) +
                   "/grammars/" + lang + ".scfg";
  }
  Grammar grammar = load_grammar_file(grammar_path);
  auto items = make_items(lang, count, 20260816u);

  auto time_best = [&](auto&& fn) {
    double best = 1e18;
    std::vector<NormalizeOutcome> out;
    for (int r = 0; r < repeats; ++r) {
      auto t0 = Clock::now();
      out = fn();
      auto t1 = Clock::now();
      best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return std::pair(best, std::move(out));
  };

  auto [serial_ms, serial_out] =
      time_best([&] { return normalize_batch_serial(items, grammar); });
  auto [parallel_ms, parallel_out] =
      time_best([&] { return normalize_batch(items, grammar, workers); });

  bool identical = serial_out.size() == parallel_out.size();
  int ok_count = 0;
  for (std::size_t i = 0; identical && i < serial_out.size(); ++i) {
    identical = serial_out[i].status == parallel_out[i].status &&
                serial_out[i].value == parallel_out[i].value;
    if (serial_out[i].ok()) ++ok_count;
  }

  std::printf("grammar: %s (%zu rules)\n", grammar_path.c_str(), grammar.rules.size());
  std::printf("items: %d, normalized: %d\n", count, ok_count);
  std::printf("serial:   %10.2f ms  (%8.1f items/s)\n", serial_ms,
              count / serial_ms * 1000.0);
  std::printf("parallel: %10.2f ms  (%8.1f items/s)  speedup %.2fx\n",
              parallel_ms, count / parallel_ms * 1000.0, serial_ms / parallel_ms);
  std::printf("outputs identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
