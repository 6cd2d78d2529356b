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

// Extractive description generators. Every method returns verbatim source
// text: either leading tokens or whole sentences in document order.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "repodesc/error.hpp"
#include "repodesc/resources.hpp"
#include "repodesc/textcore.hpp"

namespace repodesc {

enum class Method { Leading, Edmundson, Luhn, TextRank, SumBasic, AbstractSum };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::Leading:
      return "leading";
    case Method::Edmundson:
      return "edmundson";
    case Method::Luhn:
      return "luhn";
    case Method::TextRank:
      return "textrank";
    case Method::SumBasic:
      return "sumbasic";
    case Method::AbstractSum:
      return "abstract";
  }
  return "?";
}

inline Method parse_method(std::string_view name) {
  const std::string n = to_lower(name);
  for (Method m : {Method::Leading, Method::Edmundson, Method::Luhn, Method::TextRank, Method::SumBasic,
                   Method::AbstractSum}) {
    if (n == method_name(m)) return m;
  }
  if (n == "abstractsum") return Method::AbstractSum;
  throw UnsupportedMethod(std::string(name));
}

struct SummaryCandidate {
  std::string text;
  Method method = Method::Leading;
  std::vector<std::size_t> sentences;  // selected sentence indices (sentence methods)
  std::size_t token_count = 0;         // leading tokens taken (Leading)
};

struct CueDictionaries {
  std::unordered_set<std::string> null_words;
  std::unordered_set<std::string> bonus_words;
  std::unordered_set<std::string> stigma_words;

  static CueDictionaries load(const std::filesystem::path& dir) {
    CueDictionaries d;
    for (auto& w : read_data_lines(dir / "cue_null.txt")) d.null_words.insert(to_lower(w));
    for (auto& w : read_data_lines(dir / "cue_bonus.txt")) d.bonus_words.insert(to_lower(w));
    for (auto& w : read_data_lines(dir / "cue_stigma.txt")) d.stigma_words.insert(to_lower(w));
    d.validate();
    return d;
  }

  void validate() const {
    auto overlap = [](const auto& a, const auto& b) {
      return std::any_of(a.begin(), a.end(), [&](const std::string& w) { return b.contains(w); });
    };
    if (overlap(null_words, bonus_words) || overlap(null_words, stigma_words) ||
        overlap(bonus_words, stigma_words)) {
      throw DataError("cue dictionaries must be pairwise disjoint");
    }
  }
};

inline const CueDictionaries& default_cue_dictionaries() {
  static const CueDictionaries d = CueDictionaries::load(data_dir());
  return d;
}

struct EdmundsonConfig {
  double cue = 1.0;
  double key = 1.0;
  double title = 1.0;
  double location = 1.0;
  const CueDictionaries* dictionaries = nullptr;  // nullptr: shipped defaults
  std::size_t summary_sentences = 1;

  const CueDictionaries& dicts() const { return dictionaries ? *dictionaries : default_cue_dictionaries(); }

  void validate() const {
    if (cue < 0 || key < 0 || title < 0 || location < 0) throw DataError("Edmundson weights must be non-negative");
    if (cue + key + title + location <= 0) throw DataError("at least one Edmundson weight must be positive");
    if (summary_sentences < 1) throw DataError("summary_sentences must be at least 1");
  }
};

// Per-sentence component scores, exposed for inspection and testing.
struct EdmundsonScores {
  std::vector<double> cue, key, title, location, total;
};

namespace detail {

inline bool is_word(const Token& t) {
  return std::any_of(t.surface.begin(), t.surface.end(), [](unsigned char c) { return word_byte(c); });
}

inline std::vector<std::string> words_of(const TaggedSentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) {
    if (is_word(t.token)) out.push_back(t.token.normalized);
  }
  return out;
}

inline std::string join_sentences(const PlainDocument& doc, const std::vector<std::size_t>& picked) {
  std::string out;
  for (std::size_t i : picked) {
    if (!out.empty()) out.push_back(' ');
    out += doc.sentence_text[i];
  }
  return out;
}

// Indices of the top-k scores (ties: lower index), returned in document order.
// Scores that agree to 9 decimals count as tied, so sums that are equal in
// exact arithmetic do not get ranked by rounding noise.
inline std::vector<std::size_t> top_k(const std::vector<double>& scores, std::size_t k) {
  std::vector<double> rank(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) rank[i] = std::nearbyint(scores[i] * 1e9);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank[a] > rank[b]; });
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

inline SummaryCandidate sentence_summary(const PlainDocument& doc, std::vector<std::size_t> picked, Method m) {
  SummaryCandidate c;
  c.method = m;
  c.text = join_sentences(doc, picked);
  c.sentences = std::move(picked);
  return c;
}

inline void require_sentences(const PlainDocument& doc) {
  if (doc.sentences.empty()) throw EmptyDocument();
}

}  // namespace detail

// The first n_tokens tokens of the document, in source order.
inline SummaryCandidate leading(const PlainDocument& doc, std::size_t n_tokens = 25) {
  if (doc.token_count() == 0) throw EmptyDocument();
  SummaryCandidate c;
  c.method = Method::Leading;
  for (std::size_t si = 0; si < doc.sentences.size() && c.token_count < n_tokens; ++si) {
    for (const auto& t : doc.sentences[si].tokens) {
      if (c.token_count == n_tokens) break;
      if (!c.text.empty()) c.text.push_back(' ');
      c.text += t.token.surface;
      ++c.token_count;
    }
    c.sentences.push_back(si);
  }
  return c;
}

// Component scores, each normalized by the sentence's word count:
//   cue      (#bonus - #stigma)
//   key      sum of document frequencies of non-null words whose frequency
//            is at least the mean non-null frequency
//   title    number of words that also occur (as non-null words) in the title
//   location 1 for the first/last sentence, 0.5 for a paragraph opener
inline EdmundsonScores edmundson_scores(const PlainDocument& doc, const EdmundsonConfig& config) {
  const auto& d = config.dicts();
  const std::size_t n = doc.sentences.size();
  std::vector<std::vector<std::string>> words(n);
  std::map<std::string, double> freq;
  for (std::size_t i = 0; i < n; ++i) {
    words[i] = detail::words_of(doc.sentences[i]);
    for (const auto& w : words[i]) {
      if (!d.null_words.contains(w)) freq[w] += 1.0;
    }
  }
  double mean = 0.0;
  for (const auto& [w, f] : freq) mean += f;
  if (!freq.empty()) mean /= static_cast<double>(freq.size());

  std::unordered_set<std::string> title_words;
  for (const auto& t : tokenize(doc.title)) {
    if (detail::is_word(t) && !d.null_words.contains(t.normalized)) title_words.insert(t.normalized);
  }

  EdmundsonScores s;
  for (auto* v : {&s.cue, &s.key, &s.title, &s.location, &s.total}) v->assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || i + 1 == n) {
      s.location[i] = 1.0;
    } else if (i < doc.paragraph_start.size() && doc.paragraph_start[i]) {
      s.location[i] = 0.5;
    }
    const double len = static_cast<double>(words[i].size());
    if (len > 0) {
      double cue = 0, key = 0, title = 0;
      for (const auto& w : words[i]) {
        if (d.bonus_words.contains(w)) cue += 1;
        if (d.stigma_words.contains(w)) cue -= 1;
        if (auto it = freq.find(w); it != freq.end() && it->second >= mean) key += it->second;
        if (title_words.contains(w)) title += 1;
      }
      s.cue[i] = cue / len;
      s.key[i] = key / len;
      s.title[i] = title / len;
    }
    s.total[i] = config.cue * s.cue[i] + config.key * s.key[i] + config.title * s.title[i] +
                 config.location * s.location[i];
  }
  return s;
}

inline SummaryCandidate edmundson(const PlainDocument& doc, const EdmundsonConfig& config = {}) {
  config.validate();
  detail::require_sentences(doc);
  const auto scores = edmundson_scores(doc, config);
  return detail::sentence_summary(doc, detail::top_k(scores.total, config.summary_sentences), Method::Edmundson);
}

struct LuhnConfig {
  std::size_t max_gap = 4;       // insignificant words allowed inside a cluster
  double min_frequency = 2.0;    // significant words occur at least this often
  std::size_t summary_sentences = 1;
  const CueDictionaries* dictionaries = nullptr;
};

// Luhn: sentences are scored by their densest cluster of significant words,
// (significant words in cluster)^2 / cluster length.
inline std::vector<double> luhn_scores(const PlainDocument& doc, const LuhnConfig& config = {}) {
  const auto& d = config.dictionaries ? *config.dictionaries : default_cue_dictionaries();
  std::map<std::string, double> freq;
  std::vector<std::vector<std::string>> words;
  for (const auto& s : doc.sentences) {
    words.push_back(detail::words_of(s));
    for (const auto& w : words.back()) {
      if (!d.null_words.contains(w)) freq[w] += 1.0;
    }
  }
  const bool any_frequent = std::any_of(freq.begin(), freq.end(),
                                        [&](const auto& kv) { return kv.second >= config.min_frequency; });
  auto significant = [&](const std::string& w) {
    auto it = freq.find(w);
    return it != freq.end() && (!any_frequent || it->second >= config.min_frequency);
  };
  std::vector<double> scores;
  for (const auto& ws : words) {
    double best = 0.0;
    std::size_t i = 0;
    while (i < ws.size()) {
      if (!significant(ws[i])) {
        ++i;
        continue;
      }
      std::size_t start = i, last = i, count = 1;
      std::size_t j = i + 1;
      while (j < ws.size() && j - last - 1 <= config.max_gap) {
        if (significant(ws[j])) {
          last = j;
          ++count;
        }
        ++j;
      }
      const double span = static_cast<double>(last - start + 1);
      best = std::max(best, static_cast<double>(count * count) / span);
      i = last + 1;
    }
    scores.push_back(best);
  }
  return scores;
}

struct TextRankConfig {
  double damping = 0.85;
  double tolerance = 1e-6;
  std::size_t max_iterations = 10000;
  std::size_t summary_sentences = 1;
  const CueDictionaries* dictionaries = nullptr;
};

// TextRank over a sentence graph weighted by word overlap,
// |Si ∩ Sj| / (log(1 + |Si|) + log(1 + |Sj|)).
inline std::vector<double> textrank_scores(const PlainDocument& doc, const TextRankConfig& config = {}) {
  const auto& d = config.dictionaries ? *config.dictionaries : default_cue_dictionaries();
  const std::size_t n = doc.sentences.size();
  std::vector<std::set<std::string>> sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& w : detail::words_of(doc.sentences[i])) {
      if (!d.null_words.contains(w)) sets[i].insert(w);
    }
  }
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || sets[i].empty() || sets[j].empty()) continue;
      std::size_t common = 0;
      for (const auto& x : sets[i]) common += sets[j].count(x);
      const double denom = std::log1p(static_cast<double>(sets[i].size())) +
                           std::log1p(static_cast<double>(sets[j].size()));
      w[i][j] = static_cast<double>(common) / denom;
      out_weight[i] += w[i][j];
    }
  }
  std::vector<double> score(n, 1.0), next(n);
  for (std::size_t it = 0; it < config.max_iterations; ++it) {
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (w[j][i] > 0.0) acc += w[j][i] / out_weight[j] * score[j];
      }
      next[i] = (1.0 - config.damping) + config.damping * acc;
      delta = std::max(delta, std::abs(next[i] - score[i]));
    }
    score.swap(next);
    if (delta < config.tolerance) break;
  }
  return score;
}

struct SumBasicConfig {
  std::size_t summary_sentences = 1;
  const CueDictionaries* dictionaries = nullptr;
};

// SumBasic: repeatedly take the best-average-probability sentence among
// those containing the currently most probable word, then square the
// probabilities of the words it used.
inline std::vector<std::size_t> sumbasic_select(const PlainDocument& doc, const SumBasicConfig& config = {}) {
  const auto& d = config.dictionaries ? *config.dictionaries : default_cue_dictionaries();
  const std::size_t n = doc.sentences.size();
  std::vector<std::vector<std::string>> words(n);
  std::map<std::string, double> p;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& w : detail::words_of(doc.sentences[i])) {
      if (d.null_words.contains(w)) continue;
      words[i].push_back(w);
      p[w] += 1.0;
      total += 1.0;
    }
  }
  for (auto& [w, v] : p) v /= total;

  std::vector<std::size_t> picked;
  std::vector<bool> used(n, false);
  const std::size_t k = std::min(config.summary_sentences, n);
  while (picked.size() < k) {
    std::optional<std::string> top;
    double top_p = -1.0;
    for (const auto& [w, v] : p) {
      if (v > top_p) {
        top_p = v;
        top = w;
      }
    }
    auto avg = [&](std::size_t i) {
      if (words[i].empty()) return 0.0;
      double s = 0.0;
      for (const auto& w : words[i]) s += p[w];
      return s / static_cast<double>(words[i].size());
    };
    std::optional<std::size_t> best;
    double best_score = -1.0;
    for (int pass = 0; pass < 2 && !best; ++pass) {
      for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        if (pass == 0 && (!top || std::find(words[i].begin(), words[i].end(), *top) == words[i].end())) continue;
        const double a = avg(i);
        if (a > best_score) {
          best_score = a;
          best = i;
        }
      }
    }
    used[*best] = true;
    picked.push_back(*best);
    for (const auto& w : std::set<std::string>(words[*best].begin(), words[*best].end())) p[w] *= p[w];
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

struct SummarizerParams {
  std::size_t leading_tokens = 25;
  EdmundsonConfig edmundson;
  LuhnConfig luhn;
  TextRankConfig textrank;
  SumBasicConfig sumbasic;
};

inline SummaryCandidate summarize(const PlainDocument& doc, Method method, const SummarizerParams& params = {}) {
  switch (method) {
    case Method::Leading:
      return leading(doc, params.leading_tokens);
    case Method::Edmundson:
      return edmundson(doc, params.edmundson);
    case Method::Luhn:
      detail::require_sentences(doc);
      return detail::sentence_summary(doc, detail::top_k(luhn_scores(doc, params.luhn), params.luhn.summary_sentences),
                                      Method::Luhn);
    case Method::TextRank:
      detail::require_sentences(doc);
      return detail::sentence_summary(
          doc, detail::top_k(textrank_scores(doc, params.textrank), params.textrank.summary_sentences),
          Method::TextRank);
    case Method::SumBasic:
      detail::require_sentences(doc);
      return detail::sentence_summary(doc, sumbasic_select(doc, params.sumbasic), Method::SumBasic);
    case Method::AbstractSum:
      break;
  }
  throw UnsupportedMethod(std::string(method_name(method)) + " (use the abstractive model)");
}

}  // namespace repodesc
