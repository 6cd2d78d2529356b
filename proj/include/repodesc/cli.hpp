// Copyright 2026 The repodesc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. run() parses argv-style arguments and writes to the
// given streams so it can be driven in-process.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 network error.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "repodesc/abstractsum/checkpoint.hpp"
#include "repodesc/abstractsum/decode.hpp"
#include "repodesc/abstractsum/train.hpp"
#include "repodesc/agreement.hpp"
#include "repodesc/corpus.hpp"
#include "repodesc/error.hpp"
#include "repodesc/extractive.hpp"
#include "repodesc/github.hpp"
#include "repodesc/lsptest.hpp"
#include "repodesc/purpose.hpp"
#include "repodesc/resources.hpp"
#include "repodesc/rouge.hpp"
#include "repodesc/textcore.hpp"

namespace repodesc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNetwork = 3 };

enum class Format { Text, Json, Csv };

namespace detail {

using nlohmann::json;

inline std::string percent(double fraction) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << 100.0 * fraction << '%';
  return s.str();
}

inline std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF.
inline std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  char c;
  auto end_row = [&] {
    if (any || !field.empty() || !row.empty()) {
      row.push_back(field);
      rows.push_back(row);
    }
    row.clear();
    field.clear();
    any = false;
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      quoted = any = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
      any = true;
    } else if (c == '\n') {
      end_row();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) throw DataError("unterminated quoted CSV field");
  end_row();
  for (auto& r : rows) {
    for (auto& f : r) f = std::string(repodesc::detail::trim(f));
  }
  return rows;
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto piece = repodesc::detail::trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Text of one candidate/reference line: a JSON string, or an object with a
// "description", "text" or "candidate" field.
inline std::string line_text(const std::string& line, std::size_t lineno) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(lineno, e.what());
  }
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object()) {
    for (const char* key : {"description", "text", "candidate"}) {
      if (auto it = j.find(key); it != j.end() && it->is_string()) return it->get<std::string>();
    }
  }
  throw SchemaError(lineno, "expected a JSON string or an object with a \"description\" or \"text\" field");
}

struct TextFile {
  std::vector<std::string> texts;
  std::string method;  // "method" field of the first object line, if any
};

inline TextFile read_text_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  TextFile f;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (repodesc::detail::is_blank(line)) continue;
    f.texts.push_back(line_text(line, n));
    if (f.texts.size() == 1) {
      const json j = json::parse(line);
      if (j.is_object() && j.contains("method") && j["method"].is_string()) f.method = j["method"].get<std::string>();
    }
  }
  return f;
}

inline json candidate_json(const SummaryCandidate& c) {
  return {{"method", method_name(c.method)}, {"text", c.text}, {"sentences", c.sentences},
          {"token_count", c.token_count}};
}

inline json rating_json(const LspRating& r) {
  json ev = json::object();
  for (const auto& [cat, items] : r.evidence) ev[std::string(category_name(cat))] = items;
  return {{"language", r.language}, {"software_tech", r.software_tech}, {"purpose", r.purpose},
          {"evidence", ev}};
}

inline json rouge_json(const RougeScore& s) {
  return {{"f1", s.f1}, {"precision", s.precision}, {"recall", s.recall}};
}

inline json kappa_json(const KappaResult& k) {
  return {{"kappa", k.kappa}, {"observed", k.observed}, {"expected", k.expected}, {"band", k.band}};
}

}  // namespace detail

// Options shared by every subcommand.
struct Common {
  std::string format = "text";
  Format fmt() const { return format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text; }
};

// ---- describe ------------------------------------------------------------

struct DescribeOptions {
  std::string readme_path;
  std::string repo;
  std::string method = "leading";
  std::string model_path;
  std::size_t beam = 1;
  std::size_t sentences = 1;
  std::size_t leading_tokens = 25;
  std::string input_jsonl;
  std::string output;
  std::string api_url = std::string(kGithubApiUrl);
};

namespace detail {

class Describer {
 public:
  explicit Describer(const DescribeOptions& o) : opts_(o), method_(parse_method(o.method)) {
    if (opts_.sentences < 1) throw DataError("--sentences must be at least 1");
    params_.leading_tokens = opts_.leading_tokens;
    params_.edmundson.summary_sentences = opts_.sentences;
    params_.luhn.summary_sentences = opts_.sentences;
    params_.textrank.summary_sentences = opts_.sentences;
    params_.sumbasic.summary_sentences = opts_.sentences;
    if (method_ == Method::AbstractSum) {
      if (opts_.model_path.empty()) throw DataError("--method abstract needs --model <checkpoint>");
      model_ = abstractsum::load_model(opts_.model_path);
    }
  }

  SummaryCandidate operator()(std::string_view readme) const {
    if (method_ == Method::AbstractSum) {
      SummaryCandidate c;
      c.method = Method::AbstractSum;
      c.text = abstractsum::describe(*model_, readme, opts_.beam);
      return c;
    }
    return summarize(make_document(readme), method_, params_);
  }

  Method method() const { return method_; }

 private:
  DescribeOptions opts_;
  Method method_;
  SummarizerParams params_;
  std::optional<abstractsum::Model> model_;
};

}  // namespace detail

inline int describe(const DescribeOptions& o, const Common& c, std::ostream& out, std::ostream& err) {
  const detail::Describer describer(o);
  if (!o.input_jsonl.empty()) {
    if (o.output.empty()) throw DataError("--input-jsonl needs --output <candidates.jsonl>");
    const auto records = load_jsonl(std::filesystem::path(o.input_jsonl));
    std::ofstream file(o.output);
    if (!file) throw IoError("cannot write " + o.output);
    std::size_t empty = 0;
    for (const auto& r : records) {
      std::string text;
      try {
        text = describer(r.readme).text;
      } catch (const EmptyDocument&) {
        ++empty;
      }
      file << detail::json{{"full_name", r.full_name}, {"method", method_name(describer.method())}, {"description", text}}
                  .dump()
           << '\n';
    }
    if (!file) throw IoError("write failed for " + o.output);
    if (c.fmt() == Format::Json) {
      out << detail::json{{"records", records.size()}, {"empty", empty}, {"output", o.output}}.dump() << '\n';
    } else {
      out << "wrote " << records.size() << " candidates to " << o.output << '\n';
    }
    if (empty > 0) err << empty << " README(s) had no text; wrote empty candidates\n";
    return kOk;
  }

  std::string readme;
  if (!o.repo.empty()) {
    const auto slash = o.repo.find('/');
    if (!valid_full_name(o.repo)) throw DataError("--repo must be owner/name");
    GithubClientConfig cfg;
    cfg.base_url = o.api_url;
    GithubClient client(cfg);
    readme = client.fetch_readme(std::string_view(o.repo).substr(0, slash), std::string_view(o.repo).substr(slash + 1));
  } else {
    readme = read_file(o.readme_path);
  }
  const SummaryCandidate cand = describer(readme);
  switch (c.fmt()) {
    case Format::Json:
      out << detail::candidate_json(cand).dump() << '\n';
      break;
    case Format::Csv:
      out << "method,text\n" << method_name(cand.method) << ",\"";
      for (char ch : cand.text) out << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
      out << "\"\n";
      break;
    case Format::Text:
      out << cand.text << '\n';
      break;
  }
  return kOk;
}

// ---- purpose ---------------------------------------------------------------

struct PurposeOptions {
  std::string description;
  std::size_t min_length = 2;
};

inline int purpose(const PurposeOptions& o, const Common& c, std::ostream& out) {
  if (repodesc::detail::is_blank(o.description)) throw EmptyDescription();
  PatternConfig cfg;
  cfg.min_length = o.min_length;
  const DescriptionPurpose p = find_purpose(o.description, cfg);
  if (c.fmt() == Format::Json) {
    detail::json j = {{"matched", p.matched}};
    if (p.matched) {
      j["ptoken"] = p.sentence.at1(p.match.ptoken_index).token.surface;
      j["verb"] = p.match.verb.surface;
      j["sentence"] = p.sentence_index;
      j["span_begin"] = p.match.span_begin;
      j["span_end"] = p.match.span_end;
      j["span"] = p.match.span_text(p.sentence);
    }
    out << j.dump() << '\n';
  } else if (c.fmt() == Format::Csv) {
    out << "matched,ptoken,verb,span\n";
    if (p.matched) {
      out << "true," << p.sentence.at1(p.match.ptoken_index).token.surface << ',' << p.match.verb.surface << ",\""
          << p.match.span_text(p.sentence) << "\"\n";
    } else {
      out << "false,,,\n";
    }
  } else if (p.matched) {
    out << p.match.span_text(p.sentence) << '\n';
  } else {
    out << "no purpose match\n";
  }
  return kOk;
}

// ---- lsp-test ----------------------------------------------------------------

struct LspOptions {
  std::string description;
  std::string language;
  std::string corpus;
};

inline int lsp_test(const LspOptions& o, const Common& c, std::ostream& out, std::ostream& err) {
  const Lexicons& lex = default_lexicons();
  if (o.corpus.empty()) {
    const LspRating r = rate_description(o.description, o.language, lex);
    if (c.fmt() == Format::Json) {
      out << detail::rating_json(r).dump() << '\n';
    } else if (c.fmt() == Format::Csv) {
      out << "language,software_tech,purpose\n" << r.language << ',' << r.software_tech << ',' << r.purpose << '\n';
    } else {
      for (auto cat : kLspCategories) out << category_name(cat) << ": " << (r.get(cat) ? 1 : 0) << '\n';
    }
    return kOk;
  }
  const auto records = load_jsonl(std::filesystem::path(o.corpus));
  std::vector<LspRating> ratings;
  std::size_t skipped = 0;
  for (const auto& r : records) {
    if (repodesc::detail::is_blank(r.description)) {
      ++skipped;
      continue;
    }
    ratings.push_back(rate_description(r.description, r.language, lex));
  }
  if (skipped > 0) err << skipped << " record(s) without a description skipped\n";
  const LspStats st = corpus_lsp_stats(ratings);
  if (c.fmt() == Format::Json) {
    detail::json j = {{"total", st.total}, {"all_three", st.all_three}, {"all_three_fraction",
                                                                         static_cast<double>(st.all_three) / st.total}};
    for (auto cat : kLspCategories) {
      j[std::string(category_name(cat))] = {{"count", st.count(cat)},
                                            {"fraction", static_cast<double>(st.count(cat)) / st.total}};
    }
    out << j.dump() << '\n';
  } else if (c.fmt() == Format::Csv) {
    out << "category,count,total,percent\n";
    for (auto cat : kLspCategories) {
      out << category_name(cat) << ',' << st.count(cat) << ',' << st.total << ',' << detail::fixed(st.percent(cat), 2)
          << '\n';
    }
    out << "All three," << st.all_three << ',' << st.total << ',' << detail::fixed(st.all_three_percent(), 2) << '\n';
  } else {
    for (auto cat : kLspCategories) {
      out << std::left << std::setw(14) << category_name(cat) << detail::fixed(st.percent(cat), 2) << "% (" << st.count(cat)
          << '/' << st.total << ")\n";
    }
    out << std::left << std::setw(14) << "All three" << detail::fixed(st.all_three_percent(), 2) << "% (" << st.all_three
        << '/' << st.total << ")\n";
  }
  return kOk;
}

// ---- curate ----------------------------------------------------------------

struct CurateOptions {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  double percentile = 62.0;
  std::size_t min_length = 2;
};

inline int curate(const CurateOptions& o, const Common& c, std::ostream& out) {
  const auto records = load_jsonl(std::filesystem::path(o.input));
  CurateConfig cfg;
  cfg.seed = o.seed;
  cfg.percentile = o.percentile;
  cfg.pattern.min_length = o.min_length;
  const CuratedDataset d = repodesc::curate(records, cfg);
  write_dataset(o.output, d);
  const auto j = stats_to_json(d);
  if (c.fmt() == Format::Json) {
    out << j.dump() << '\n';
  } else if (c.fmt() == Format::Csv) {
    out << "stage,count\n";
    for (auto& [k, v] : j.items()) out << k << ',' << v.dump() << '\n';
  } else {
    const auto& s = d.stats;
    out << "input records          " << s.input << '\n'
        << "with description       " << s.with_description << '\n'
        << "purpose pattern fires  " << s.with_purpose << '\n'
        << "with README            " << s.with_readme << '\n'
        << "README > " << std::left << std::setw(14) << d.length_threshold << s.long_readme << '\n'
        << "train / dev / test     " << s.train << " / " << s.dev << " / " << s.test << '\n';
  }
  return kOk;
}

// ---- evaluate ----------------------------------------------------------------

struct EvaluateOptions {
  std::vector<std::string> candidates;
  std::vector<std::string> names;
  std::string references;
};

inline int evaluate(const EvaluateOptions& o, const Common& c, std::ostream& out) {
  const detail::TextFile refs = detail::read_text_jsonl(o.references);
  if (refs.texts.empty()) throw EmptyInput("reference file has no lines");
  RougeReport report;
  for (std::size_t k = 0; k < o.candidates.size(); ++k) {
    const detail::TextFile cands = detail::read_text_jsonl(o.candidates[k]);
    if (cands.texts.size() != refs.texts.size()) {
      throw DataError(o.candidates[k] + " has " + std::to_string(cands.texts.size()) + " lines but the references have " +
                      std::to_string(refs.texts.size()));
    }
    std::string name = k < o.names.size()       ? o.names[k]
                       : !cands.method.empty() ? cands.method
                                               : std::filesystem::path(o.candidates[k]).stem().string();
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < refs.texts.size(); ++i) pairs.emplace_back(cands.texts[i], refs.texts[i]);
    report.rows.emplace_back(std::move(name), evaluate_corpus(pairs));
  }
  if (c.fmt() == Format::Json) {
    detail::json rows = detail::json::array();
    for (const auto& [name, t] : report.rows) {
      rows.push_back({{"method", name},
                      {"rouge1", detail::rouge_json(t.r1)},
                      {"rouge2", detail::rouge_json(t.r2)},
                      {"rougeL", detail::rouge_json(t.rl)}});
    }
    out << detail::json{{"pairs", refs.texts.size()}, {"rows", rows}}.dump() << '\n';
  } else if (c.fmt() == Format::Csv) {
    report.write_csv(out);
  } else {
    report.write_table(out);
  }
  return kOk;
}

// ---- train -----------------------------------------------------------------

struct TrainOptions {
  std::string train;
  std::string output;
  std::string loss_csv;
  std::uint64_t seed = 0;
  std::size_t vocab_size = 50000;
  abstractsum::ModelConfig model;
  abstractsum::TrainConfig training;
};

inline int train(TrainOptions o, const Common& c, std::ostream& out, std::ostream& err) {
  namespace as = abstractsum;
  const auto records = load_jsonl(std::filesystem::path(o.train));
  std::vector<std::vector<std::string>> sources, targets, corpus;
  for (const auto& r : records) {
    if (repodesc::detail::is_blank(r.readme) || repodesc::detail::is_blank(r.description)) continue;
    sources.push_back(as::readme_tokens(r.readme, o.model.max_source_len));
    targets.push_back(as::description_tokens(r.description));
    if (sources.back().empty() || targets.back().empty()) {
      sources.pop_back();
      targets.pop_back();
      continue;
    }
    corpus.push_back(sources.back());
    corpus.push_back(targets.back());
  }
  if (sources.empty()) throw EmptyCorpus();
  o.model.seed = o.seed;
  o.training.seed = o.seed;
  as::Model m;
  m.vocab = as::build_vocab(corpus, o.vocab_size);
  m.params = as::ModelParameters::initialize(o.model, m.vocab.size());
  std::vector<as::Example> data;
  for (std::size_t i = 0; i < sources.size(); ++i) data.push_back(as::make_example(m, sources[i], targets[i]));

  auto curve = as::train_ml(m, data, o.training);
  const double ml_loss = curve.empty() ? 0.0 : curve.back().loss;
  std::size_t scst_steps = 0;
  if (o.training.scst_epochs > 0) {
    const auto scst = as::train_scst(m, data, o.training, curve.size() + 1);
    scst_steps = scst.size();
    curve.insert(curve.end(), scst.begin(), scst.end());
  }
  as::save_model(m, o.output);
  if (!o.loss_csv.empty()) {
    std::ofstream csv(o.loss_csv);
    if (!csv) throw IoError("cannot write " + o.loss_csv);
    as::write_loss_csv(csv, curve);
  }
  const double rouge = as::mean_greedy_rouge_l(m, data);
  if (c.fmt() == Format::Json) {
    out << detail::json{{"examples", data.size()},
                        {"vocab_size", m.vocab.size()},
                        {"parameters", m.params.parameter_count()},
                        {"ml_steps", curve.size() - scst_steps},
                        {"final_ml_loss", ml_loss},
                        {"scst_steps", scst_steps},
                        {"train_rouge_l_f1", rouge},
                        {"checkpoint", o.output}}
               .dump()
        << '\n';
  } else {
    out << "examples " << data.size() << ", vocabulary " << m.vocab.size() << ", parameters "
        << m.params.parameter_count() << '\n'
        << "ml steps " << curve.size() - scst_steps << ", final loss " << detail::fixed(ml_loss, 4) << '\n'
        << "scst steps " << scst_steps << '\n'
        << "train ROUGE-L F1 " << detail::percent(rouge) << '\n'
        << "checkpoint " << o.output << '\n';
  }
  (void)err;
  return kOk;
}

// ---- agreement ---------------------------------------------------------------

struct AgreementOptions {
  std::string csv;
  bool counts = false;
  bool header = false;
  std::string categories;
};

inline RatingMatrix read_rating_matrix(const AgreementOptions& o) {
  std::ifstream in(o.csv);
  if (!in) throw IoError("cannot read " + o.csv);
  auto rows = detail::read_csv(in);
  if (o.counts) {
    if (rows.size() < 2) throw EmptyInput("count matrix needs a header row and at least one item");
    RatingMatrix m;
    m.categories = rows.front();
    for (std::size_t i = 1; i < rows.size(); ++i) {
      std::vector<int> r;
      for (const auto& f : rows[i]) {
        try {
          std::size_t used = 0;
          r.push_back(std::stoi(f, &used));
          if (used != f.size()) throw std::invalid_argument(f);
        } catch (const std::exception&) {
          throw ParseError(i + 1, "not an integer count: '" + f + "'");
        }
      }
      m.counts.push_back(std::move(r));
    }
    int sum = 0;
    for (int v : m.counts.front()) sum += v;
    m.raters = sum;
    m.validate(1);
    return m;
  }
  if (o.header && !rows.empty()) rows.erase(rows.begin());
  return RatingMatrix::from_labels(rows, detail::split_list(o.categories));
}

inline int agreement(const AgreementOptions& o, const Common& c, std::ostream& out) {
  const RatingMatrix m = read_rating_matrix(o);
  std::optional<KappaResult> fleiss;
  try {
    fleiss = fleiss_kappa(m);
  } catch (const Degenerate&) {
  }
  std::optional<KappaResult> randolph;
  if (m.categories.size() >= 2) randolph = randolph_kappa(m);
  if (!fleiss && !randolph) throw Degenerate();
  if (c.fmt() == Format::Json) {
    detail::json j = {{"items", m.items()}, {"raters", m.raters}, {"categories", m.categories}};
    j["fleiss"] = fleiss ? detail::kappa_json(*fleiss) : detail::json(nullptr);
    j["randolph"] = randolph ? detail::kappa_json(*randolph) : detail::json(nullptr);
    out << j.dump() << '\n';
  } else if (c.fmt() == Format::Csv) {
    out << "statistic,kappa,observed,expected,band\n";
    for (auto [name, k] : {std::pair{"fleiss", fleiss}, std::pair{"randolph", randolph}}) {
      if (k) {
        out << name << ',' << detail::fixed(k->kappa, 4) << ',' << detail::fixed(k->observed, 4) << ','
            << detail::fixed(k->expected, 4) << ',' << k->band << '\n';
      } else {
        out << name << ",,,,undefined\n";
      }
    }
  } else {
    out << "items " << m.items() << ", raters " << m.raters << ", categories " << m.categories.size() << '\n';
    if (fleiss) {
      out << "Fleiss kappa    " << detail::fixed(fleiss->kappa, 4) << "  (" << fleiss->band << ")\n";
    } else {
      out << "Fleiss kappa    undefined (all ratings in one category)\n";
    }
    if (randolph) {
      out << "Randolph kappa  " << detail::fixed(randolph->kappa, 4) << "  (" << randolph->band << ")\n"
          << "agreement       " << detail::percent(randolph->observed) << '\n';
    }
  }
  return kOk;
}

// ---- dispatch ----------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Evaluate and generate short repository descriptions.", "repodesc"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "Read options from a TOML/INI file");
  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.fallthrough();

  DescribeOptions dsc;
  auto* d = app.add_subcommand("describe", "Produce a description candidate for a README");
  auto* d_file = d->add_option("readme", dsc.readme_path, "README file")->check(CLI::ExistingFile);
  auto* d_repo = d->add_option("--repo", dsc.repo, "Fetch the README of owner/name from GitHub");
  auto* d_batch = d->add_option("--input-jsonl", dsc.input_jsonl, "Describe every record of a JSONL file")
                      ->check(CLI::ExistingFile);
  d_file->excludes(d_repo)->excludes(d_batch);
  d_repo->excludes(d_batch);
  d->add_option("--output", dsc.output, "Candidates JSONL written in batch mode");
  d->add_option("--method", dsc.method, "leading|edmundson|luhn|textrank|sumbasic|abstract")->capture_default_str();
  d->add_option("--model", dsc.model_path, "Checkpoint for --method abstract")->check(CLI::ExistingFile);
  d->add_option("--beam", dsc.beam, "Beam width for --method abstract (1 = greedy)")->capture_default_str();
  d->add_option("--sentences", dsc.sentences, "Sentences selected by extractive methods")->capture_default_str();
  d->add_option("--leading-tokens", dsc.leading_tokens, "Tokens taken by --method leading")->capture_default_str();
  d->add_option("--api-url", dsc.api_url, "GitHub API base URL")->capture_default_str();

  PurposeOptions pur;
  auto* p = app.add_subcommand("purpose", "Check a description for the purpose pattern");
  p->add_option("description", pur.description, "Description text")->required();
  p->add_option("--min-length", pur.min_length, "Minimum tokens from the purpose word to the end")
      ->capture_default_str();

  LspOptions lsp;
  auto* l = app.add_subcommand("lsp-test", "Rate Language / Software technology / Purpose");
  auto* l_desc = l->add_option("description", lsp.description, "Description text");
  auto* l_corpus = l->add_option("--corpus", lsp.corpus, "JSONL of repository records")->check(CLI::ExistingFile);
  l_desc->excludes(l_corpus);
  l->add_option("--language", lsp.language, "Declared repository language");

  CurateOptions cur;
  auto* cu = app.add_subcommand("curate", "Filter records and split train/dev/test");
  cu->add_option("--input", cur.input, "Repository records JSONL")->required()->check(CLI::ExistingFile);
  cu->add_option("--output", cur.output, "Output directory")->required();
  cu->add_option("--seed", cur.seed, "Shuffle seed")->required();
  cu->add_option("--percentile", cur.percentile, "README length percentile cut")->capture_default_str();
  cu->add_option("--min-length", cur.min_length, "Purpose pattern minimum length")->capture_default_str();

  EvaluateOptions ev;
  auto* e = app.add_subcommand("evaluate", "ROUGE report of candidate files against references");
  e->add_option("--candidates", ev.candidates, "Candidates JSONL (repeatable)")->required()->check(CLI::ExistingFile);
  e->add_option("--name", ev.names, "Row name for each --candidates file (repeatable)");
  e->add_option("--references,--labels", ev.references, "Reference JSONL")->required()->check(CLI::ExistingFile);

  TrainOptions tr;
  auto* t = app.add_subcommand("train", "Train the abstractive model");
  t->add_option("--train", tr.train, "Training split JSONL")->required()->check(CLI::ExistingFile);
  t->add_option("--output", tr.output, "Checkpoint path")->required();
  t->add_option("--seed", tr.seed, "Initialization and shuffling seed")->required();
  t->add_option("--loss-csv", tr.loss_csv, "Write the loss curve as CSV");
  t->add_option("--vocab-size", tr.vocab_size, "Vocabulary cap")->capture_default_str();
  t->add_option("--embed-dim", tr.model.embed_dim, "Embedding size")->capture_default_str();
  t->add_option("--hidden-dim", tr.model.hidden_dim, "Recurrent state size")->capture_default_str();
  t->add_option("--attn-dim", tr.model.attn_dim, "Attention size (0 = hidden size)")->capture_default_str();
  t->add_option("--max-source-len", tr.model.max_source_len, "README tokens kept")->capture_default_str();
  t->add_option("--max-target-len", tr.model.max_target_len, "Description tokens kept")->capture_default_str();
  t->add_option("--ml-steps", tr.training.ml_steps, "Maximum-likelihood steps")->capture_default_str();
  t->add_option("--scst-epochs", tr.training.scst_epochs, "Self-critical epochs")->capture_default_str();
  t->add_option("--lr", tr.training.learning_rate, "Maximum-likelihood learning rate")->capture_default_str();
  t->add_option("--scst-lr", tr.training.scst_learning_rate, "Self-critical learning rate")->capture_default_str();
  t->add_option("--batch-size", tr.training.batch_size, "Examples per update")->capture_default_str();
  t->add_option("--clip", tr.training.clip_norm, "Gradient norm clip")->capture_default_str();
  t->add_option("--ml-mix", tr.training.ml_mix, "Teacher-forced weight mixed into the self-critical loss")
      ->capture_default_str();
  t->add_option("--target-loss", tr.training.target_loss, "Stop ML early once every example is below this")
      ->capture_default_str();

  AgreementOptions ag;
  auto* a = app.add_subcommand("agreement", "Fleiss and Randolph kappa of a rating CSV");
  a->add_option("csv", ag.csv, "One row per item")->required()->check(CLI::ExistingFile);
  a->add_flag("--counts", ag.counts, "Rows are category counts under a header of category names");
  a->add_flag("--header", ag.header, "Skip the first row of a label CSV");
  a->add_option("--categories", ag.categories, "Comma-separated category list for label CSVs");

  std::vector<const char*> argv{"repodesc"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      app.exit(ex, out, err);
      return kOk;
    }
    err << "error: " << ex.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (d->parsed()) {
      if (dsc.readme_path.empty() && dsc.repo.empty() && dsc.input_jsonl.empty()) {
        err << "error: describe needs a README file, --repo or --input-jsonl\n\n" << d->help();
        return kUsage;
      }
      return describe(dsc, common, out, err);
    }
    if (p->parsed()) return purpose(pur, common, out);
    if (l->parsed()) {
      if (lsp.description.empty() && lsp.corpus.empty()) {
        err << "error: lsp-test needs a description or --corpus\n\n" << l->help();
        return kUsage;
      }
      return lsp_test(lsp, common, out, err);
    }
    if (cu->parsed()) return curate(cur, common, out);
    if (e->parsed()) return evaluate(ev, common, out);
    if (t->parsed()) return train(tr, common, out, err);
    if (a->parsed()) return agreement(ag, common, out);
  } catch (const UnsupportedMethod& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const NetworkError& ex) {
    err << "network error: " << ex.what() << '\n';
    return kNetwork;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kData;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace repodesc::cli
