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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "timextk/corpus.hpp"
#include "timextk/detection.hpp"
#include "timextk/evaluator.hpp"
#include "timextk/grammar.hpp"
#include "timextk/pipeline.hpp"
#include "timextk/temporal.hpp"

namespace fs = std::filesystem;
using namespace timextk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string data_root() {
  if (const char* env = std::getenv("TIMEXTK_DATA")) return env;
  return "data";
}

std::string default_grammar_path(const std::string& lang) {
  return data_root() + "/grammars/" + lang + ".scfg";
}

std::string default_lexicon_path(const std::string& lang) {
  return data_root() + "/lexicons/" + lang + ".lex";
}

// --grammar / --lexicon accept "path" (applies to --lang) or "lang=path".
void parse_lang_overrides(const std::vector<std::string>& specs,
                          const std::string& default_lang,
                          std::map<std::string, std::string>& out) {
  for (const auto& spec : specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) {
      out[default_lang] = spec;
    } else {
      std::string lang = spec.substr(0, eq);
      if (lang.empty() || eq + 1 == spec.size())
        throw ConfigError("bad language override: " + spec);
      out[lang] = spec.substr(eq + 1);
    }
  }
}

Grammar load_grammar_checked(const std::string& path) {
  if (!fs::exists(path)) throw ConfigError("grammar file not found: " + path);
  return load_grammar_file(path);
}

Lexicon load_lexicon_checked(const std::string& path) {
  if (!fs::exists(path)) throw ConfigError("lexicon file not found: " + path);
  return load_lexicon_file(path);
}

bool timeml_extension(const std::string& path) {
  auto ext = fs::path(path).extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".tml" || ext == ".timeml" || ext == ".xml";
}

std::vector<TabulatedDocument> read_documents(const std::vector<std::string>& paths,
                                              bool include_dct, bool repair) {
  std::vector<TabulatedDocument> docs;
  for (const auto& path : paths) {
    if (timeml_extension(path)) {
      docs.push_back(to_tabulated(read_timeml_file(path), include_dct));
    } else {
      auto batch = read_tabulated_file(path, repair);
      docs.insert(docs.end(), batch.begin(), batch.end());
    }
  }
  return docs;
}

std::string sanitize_filename(const std::string& id) {
  std::string out = id;
  for (auto& c : out)
    if (c == '/' || c == '\\' || c == ':') c = '_';
  return out.empty() ? std::string("doc") : out;
}

// Per-document files are staged and renamed so readers never see a
// half-written prediction file.
void write_output(const std::vector<TabulatedDocument>& docs,
                  const std::string& output) {
  if (output.empty()) {
    std::cout << write_tabulated(docs);
    return;
  }
  bool as_dir = output.back() == '/' ||
                (fs::exists(output) && fs::is_directory(output));
  if (!as_dir) {
    std::ofstream out(output);
    if (!out) throw ConfigError("cannot write output file: " + output);
    write_tabulated(out, docs);
    return;
  }
  fs::create_directories(output);
  for (const auto& doc : docs) {
    fs::path final_path = fs::path(output) / (sanitize_filename(doc.doc_id) + ".tab");
    fs::path tmp_path = final_path;
    tmp_path += ".tmp";
    {
      std::ofstream out(tmp_path);
      if (!out) throw ConfigError("cannot write output file: " + tmp_path.string());
      write_tabulated(out, doc);
    }
    fs::rename(tmp_path, final_path);
  }
}

int cmd_normalize(const std::string& lang, const std::string& grammar_path,
                  const std::string& anchor_text,
                  const std::vector<std::string>& texts,
                  const std::vector<std::string>& inputs, bool include_dct,
                  const std::string& output) {
  // An explicit --grammar applies everywhere; otherwise grammars are
  // loaded per language, honoring each document's declared language.
  std::map<std::string, Grammar> grammars;
  auto grammar_for = [&](const std::string& l) -> const Grammar& {
    const std::string key = grammar_path.empty() ? l : std::string();
    auto it = grammars.find(key);
    if (it == grammars.end())
      it = grammars
               .emplace(key, load_grammar_checked(
                                 grammar_path.empty() ? default_grammar_path(l)
                                                      : grammar_path))
               .first;
    return it->second;
  };

  for (const auto& text : texts) {
    auto anchor = parse_anchor(anchor_text);
    if (!anchor) throw ConfigError("--anchor must be YYYY-MM-DD[THH:MM[:SS]]");
    auto outcome = normalize(text, *anchor, grammar_for(lang));
    std::cout << (outcome.ok() ? outcome.value : std::string("PARSE_FAIL")) << "\n";
  }

  if (inputs.empty()) return kExitOk;
  auto docs = read_documents(inputs, include_dct, false);
  for (auto& doc : docs) {
    const Grammar& grammar =
        grammar_for(doc.lang.empty() ? lang : doc.lang);
    for (const auto& timex : tabulated_timexes(doc)) {
      auto outcome = normalize(timex.text, doc.anchor, grammar);
      std::string value = outcome.ok() ? outcome.value : std::string("-");
      for (int i = timex.token_span.begin; i < timex.token_span.end; ++i)
        doc.rows[static_cast<std::size_t>(i)].value = value;
      std::cout << doc.doc_id << "\t" << timex.text << "\t"
                << (outcome.ok() ? outcome.value : std::string("PARSE_FAIL")) << "\n";
    }
  }
  if (!output.empty()) write_output(docs, output);
  return kExitOk;
}

int cmd_detect(const std::string& lang, const std::string& lexicon_path,
               const std::vector<std::string>& inputs, bool include_dct,
               const std::string& output) {
  Lexicon lexicon = load_lexicon_checked(
      lexicon_path.empty() ? default_lexicon_path(lang) : lexicon_path);
  auto docs = read_documents(inputs, include_dct, false);
  for (auto& doc : docs) {
    std::vector<Token> tokens;
    tokens.reserve(doc.rows.size());
    int at = 0;
    for (const auto& row : doc.rows) {
      Token t;
      t.text = row.token;
      t.begin = static_cast<std::size_t>(at);
      t.end = t.begin + row.token.size();
      auto inner = tokenize(row.token);
      if (inner.size() == 1 && inner[0].numeric) t.numeric = inner[0].numeric;
      at = static_cast<int>(t.end) + 1;
      tokens.push_back(std::move(t));
    }
    auto detections = baseline_detect(tokens, lexicon);
    for (auto& row : doc.rows) {
      row.tag = BioTag{};
      row.value = "-";
    }
    for (const auto& d : detections) {
      for (int i = d.span.begin; i < d.span.end; ++i) {
        auto& row = doc.rows[static_cast<std::size_t>(i)];
        row.tag.prefix = (i == d.span.begin) ? 'B' : 'I';
        row.tag.type = d.type;
      }
    }
  }
  write_output(docs, output);
  return kExitOk;
}

int cmd_pipeline(const std::string& lang,
                 const std::vector<std::string>& grammar_specs,
                 const std::vector<std::string>& lexicon_specs,
                 const std::vector<std::string>& inputs,
                 const std::string& predictions, const std::string& mode_name,
                 bool include_dct, int workers, const std::string& output) {
  PipelineOptions options;
  options.workers = workers;
  if (mode_name == "xtn-d") {
    options.mode = PipelineMode::DetectionFocused;
  } else if (mode_name == "xtn-n") {
    options.mode = PipelineMode::NormalizationFocused;
  } else {
    throw ConfigError("--mode must be xtn-d or xtn-n");
  }
  if (!predictions.empty() && !inputs.empty())
    throw ConfigError("give either input documents or --predictions, not both");
  if (predictions.empty() && inputs.empty())
    throw ConfigError("no input documents; give files or --predictions");

  std::vector<TabulatedDocument> docs;
  if (!predictions.empty()) {
    options.source = DetectionSource::ExternalTags;
    docs = read_tabulated_file(predictions, true);
  } else {
    options.source = DetectionSource::Baseline;
    docs = read_documents(inputs, include_dct, false);
  }

  std::map<std::string, std::string> grammar_paths, lexicon_paths;
  parse_lang_overrides(grammar_specs, lang, grammar_paths);
  parse_lang_overrides(lexicon_specs, lang, lexicon_paths);

  std::map<std::string, Grammar> grammars;
  std::map<std::string, Lexicon> lexicons;
  auto ensure_lang = [&](const std::string& l) {
    if (!grammars.count(l)) {
      auto it = grammar_paths.find(l);
      std::string path = it != grammar_paths.end() ? it->second : default_grammar_path(l);
      if (fs::exists(path)) grammars.emplace(l, load_grammar_checked(path));
    }
    if (options.source == DetectionSource::Baseline && !lexicons.count(l)) {
      auto it = lexicon_paths.find(l);
      std::string path = it != lexicon_paths.end() ? it->second : default_lexicon_path(l);
      if (fs::exists(path)) lexicons.emplace(l, load_lexicon_checked(path));
    }
  };
  ensure_lang(lang);
  for (const auto& doc : docs)
    if (!doc.lang.empty()) ensure_lang(doc.lang);
  if (grammars.empty()) throw ConfigError("no grammar available for language: " + lang);

  auto result = run_pipeline(docs, grammars, lexicons, lang, options);

  int failed = 0, detected = 0, normalized = 0, dropped = 0, repairs = 0;
  for (const auto& report : result.reports) {
    if (!report.ok) {
      ++failed;
      std::cerr << "doc " << report.doc_id << ": " << report.message << "\n";
    }
    detected += report.detected;
    normalized += report.normalized;
    dropped += report.dropped;
    repairs += report.repairs;
  }
  write_output(result.predictions, output);
  std::cerr << "pipeline: " << docs.size() << " docs, " << failed
            << " failed, " << detected << " detected, " << normalized
            << " normalized, " << dropped << " dropped, " << repairs
            << " tag repairs\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& gold_path, const std::string& pred_path,
                 const std::string& report_path) {
  auto gold = read_tabulated_file(gold_path, false);
  auto pred = read_tabulated_file(pred_path, true);
  auto evaluation = evaluate_corpus(gold, pred);
  std::cout << render_metrics(evaluation.metrics);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw ConfigError("cannot write report file: " + report_path);
    out << render_report_json(evaluation);
  }
  return kExitOk;
}

int cmd_grammar_check(const std::vector<std::string>& paths) {
  bool clean = true;
  for (const auto& path : paths) {
    Grammar grammar = load_grammar_checked(path);
    auto diagnostics = validate_grammar(grammar);
    std::cout << path << ": " << grammar.rules.size() << " rules, "
              << diagnostics.size() << " warnings\n";
    for (const auto& d : diagnostics) {
      std::cout << "  " << d.message << "\n";
      clean = false;
    }
    Grammar reloaded = load_grammar(serialize_grammar(grammar));
    if (serialize_grammar(reloaded) != serialize_grammar(grammar)) {
      std::cout << "  serialization round-trip mismatch\n";
      clean = false;
    }
  }
  (void)clean;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilingual timex detection and normalization toolkit"};
  app.require_subcommand(1);

  std::string lang = "en", anchor, grammar_path, lexicon_path, output;
  std::string predictions, mode_name = "xtn-d", report_path;
  std::vector<std::string> texts, inputs, grammar_specs, lexicon_specs, check_paths;
  std::string gold_path, pred_path;
  bool include_dct = false;
  int workers = 0;

  auto* norm = app.add_subcommand("normalize", "Normalize timex text or tabulated files");
  norm->add_option("text", texts, "Timex strings to normalize");
  norm->add_option("--lang", lang, "Language code (grammar default)");
  norm->add_option("--anchor", anchor, "Anchor date YYYY-MM-DD[THH:MM[:SS]]");
  norm->add_option("--grammar", grammar_path, "Grammar file override");
  norm->add_option("-i,--input", inputs, "Tabulated or TimeML input files");
  norm->add_option("-o,--output", output, "Write value-filled tabulated output");
  norm->add_flag("--include-dct", include_dct, "Keep creation times as entities");

  auto* det = app.add_subcommand("detect", "Run the pattern baseline detector");
  det->add_option("input", inputs, "Tabulated or TimeML input files")->required();
  det->add_option("--lang", lang, "Language code (lexicon default)");
  det->add_option("--lexicon", lexicon_path, "Lexicon file override");
  det->add_option("-o,--output", output, "Output file or directory (default stdout)");
  det->add_flag("--include-dct", include_dct, "Keep creation times as entities");

  auto* pipe = app.add_subcommand("pipeline", "Detect, normalize and emit predictions");
  pipe->add_option("input", inputs, "Tabulated or TimeML input files");
  pipe->add_option("--lang", lang, "Default language code");
  pipe->add_option("--grammar", grammar_specs, "Grammar override: path or lang=path");
  pipe->add_option("--lexicon", lexicon_specs, "Lexicon override: path or lang=path");
  pipe->add_option("--predictions", predictions, "External detector tags (tabulated)");
  pipe->add_option("--mode", mode_name, "xtn-d keeps unnormalized timexes, xtn-n drops them");
  pipe->add_option("--workers", workers, "Worker threads (0 = auto)");
  pipe->add_option("-o,--output", output, "Output file or directory (default stdout)");
  pipe->add_flag("--include-dct", include_dct, "Keep creation times as entities");

  auto* eval = app.add_subcommand("evaluate", "Score predictions against gold");
  eval->add_option("gold", gold_path, "Gold tabulated file")->required();
  eval->add_option("pred", pred_path, "Predicted tabulated file")->required();
  eval->add_option("--report", report_path, "Write a JSON error report");

  auto* check = app.add_subcommand("grammar-check", "Validate grammar files");
  check->add_option("grammar", check_paths, "Grammar files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (norm->parsed()) {
      if (!texts.empty() && anchor.empty())
        throw ConfigError("--anchor is required when normalizing strings");
      if (texts.empty() && inputs.empty())
        throw ConfigError("nothing to normalize; give strings or --input files");
      return cmd_normalize(lang, grammar_path, anchor, texts, inputs,
                           include_dct, output);
    }
    if (det->parsed())
      return cmd_detect(lang, lexicon_path, inputs, include_dct, output);
    if (pipe->parsed())
      return cmd_pipeline(lang, grammar_specs, lexicon_specs, inputs,
                          predictions, mode_name, include_dct, workers, output);
    if (eval->parsed()) return cmd_evaluate(gold_path, pred_path, report_path);
    if (check->parsed()) return cmd_grammar_check(check_paths);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GrammarError& e) {
    std::cerr << "grammar error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CorpusError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const EvaluatorError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitData;
  } catch (const DetectError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}
