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

// Independent reference implementations used by the unit tests and the
// acceptance runner. None of these call into the code they check.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "repodesc/abstractsum/model.hpp"
#include "repodesc/abstractsum/vocab.hpp"

namespace oracle {

// ---- finite differences -------------------------------------------------

struct GradCheckCase {
  repodesc::abstractsum::ModelParameters params;
  repodesc::abstractsum::SourceEncoding source;
  std::vector<repodesc::abstractsum::TokenId> target;
};

// Tiny random model: 8 words + 4 reserved ids, a 5-token source with two
// out-of-vocabulary words, and a 4-step target that mixes vocabulary and
// copied ids.
inline GradCheckCase random_grad_case(std::uint64_t seed, int embed = 4, int hidden = 6) {
  using namespace repodesc::abstractsum;
  std::mt19937_64 rng(seed);
  Vocab v;
  for (int i = 0; i < 8; ++i) v.add("w" + std::to_string(i));
  ModelConfig cfg;
  cfg.embed_dim = embed;
  cfg.hidden_dim = hidden;
  cfg.attn_dim = 5;
  cfg.max_source_len = 5;
  cfg.max_target_len = 8;
  cfg.seed = seed;
  cfg.init_scale = 0.5;
  GradCheckCase c{ModelParameters::initialize(cfg, v.size()), {}, {}};
  // Biases start at zero; randomize them too so every path is exercised.
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  c.params.visit([&](std::string_view, auto& t) {
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] += 0.1 * u(rng);
  });
  std::uniform_int_distribution<int> word(0, 7);
  std::vector<std::string> src;
  for (int i = 0; i < 5; ++i) src.push_back("w" + std::to_string(word(rng)));
  src[1] = "oov_a";
  src[3] = "oov_b";
  c.source = encode_source(v, src);
  c.target = {c.source.target_id(v, "oov_a"), v.id("w" + std::to_string(word(rng))),
              c.source.target_id(v, src[4]), Vocab::kEos};
  return c;
}

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_tensor;
  std::size_t checked = 0;
};

// Central differences with step h on every parameter entry. Relative error
// is |a - n| / max(|a|, |n|, floor).
inline GradCheckResult gradient_check(GradCheckCase& c, double h = 1e-5, double floor = 1e-6) {
  using namespace repodesc::abstractsum;
  ModelParameters grad = ModelParameters::zeros_like(c.params);
  loss_and_gradient(c.params, c.source, c.target, &grad);
  GradCheckResult r;
  visit_pair(c.params, grad, [&](std::string_view name, auto& w, const auto& g) {
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double saved = w.data()[i];
      w.data()[i] = saved + h;
      const double up = loss_and_gradient(c.params, c.source, c.target).nll;
      w.data()[i] = saved - h;
      const double down = loss_and_gradient(c.params, c.source, c.target).nll;
      w.data()[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double analytic = g.data()[i];
      const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
      const double rel = std::abs(analytic - numeric) / denom;
      ++r.checked;
      if (rel > r.max_rel_error) {
        r.max_rel_error = rel;
        r.worst_tensor = std::string(name);
      }
    }
  });
  return r;
}

// ---- purpose pattern ----------------------------------------------------

struct TaggedWords {
  std::vector<std::string> words;
  std::vector<std::string> tags;
};

// Literal reading of the pattern with 1-based i: 1 < i < eos, w_i is a
// purpose token, w_{i+1} carries a verb tag, eos - i >= min_length. Returns
// the smallest such i.
inline std::optional<std::size_t> purpose_index(const TaggedWords& s, std::size_t min_length) {
  const std::size_t eos = s.words.size() + 1;
  auto lower = [](std::string w) {
    for (char& ch : w) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return w;
  };
  static const std::set<std::string> verbs = {"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"};
  for (std::size_t i = 1; i <= s.words.size(); ++i) {
    const bool bound = 1 < i && i < eos;
    const std::string w = lower(s.words[i - 1]);
    const bool ptoken = w == "for" || w == "to";
    const bool verb = i + 1 <= s.words.size() && verbs.contains(s.tags[i]);
    const bool length = eos - i >= min_length;
    if (bound && ptoken && verb && length) return i;
  }
  return std::nullopt;
}

inline TaggedWords random_tagged_words(std::mt19937_64& rng) {
  static const std::vector<std::string> alphabet = {"for", "to", "For", "library", "x"};
  static const std::vector<std::string> tags = {"VB", "NN", "VBG"};
  std::uniform_int_distribution<std::size_t> len(1, 12), word(0, alphabet.size() - 1), tag(0, tags.size() - 1);
  TaggedWords s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    s.words.push_back(alphabet[word(rng)]);
    s.tags.push_back(tags[tag(rng)]);
  }
  return s;
}

// ---- ROUGE ----------------------------------------------------------------

struct Prf {
  double p = 0, r = 0, f = 0;
};

inline Prf prf(double overlap, double cand, double ref) {
  Prf x;
  x.p = cand > 0 ? overlap / cand : 0;
  x.r = ref > 0 ? overlap / ref : 0;
  x.f = x.p + x.r > 0 ? 2 * x.p * x.r / (x.p + x.r) : 0;
  return x;
}

// Greedy consumption of reference n-grams; each reference position is
// matched at most once.
inline Prf rouge_n(const std::vector<std::string>& c, const std::vector<std::string>& r, std::size_t n) {
  if (c.size() < n || r.size() < n) {
    return prf(0, c.size() >= n ? double(c.size() - n + 1) : 0, r.size() >= n ? double(r.size() - n + 1) : 0);
  }
  std::vector<bool> used(r.size() - n + 1, false);
  double overlap = 0;
  for (std::size_t i = 0; i + n <= c.size(); ++i) {
    for (std::size_t j = 0; j + n <= r.size(); ++j) {
      if (used[j]) continue;
      if (std::equal(c.begin() + i, c.begin() + i + n, r.begin() + j)) {
        used[j] = true;
        overlap += 1;
        break;
      }
    }
  }
  return prf(overlap, double(c.size() - n + 1), double(r.size() - n + 1));
}

inline std::size_t lcs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = a.size(); i-- > 0;) {
    for (std::size_t j = b.size(); j-- > 0;) {
      t[i][j] = a[i] == b[j] ? 1 + t[i + 1][j + 1] : std::max(t[i + 1][j], t[i][j + 1]);
    }
  }
  return t[0][0];
}

inline Prf rouge_l(const std::vector<std::string>& c, const std::vector<std::string>& r) {
  return prf(double(lcs(c, r)), double(c.size()), double(r.size()));
}

inline std::vector<std::string> random_words(std::mt19937_64& rng, std::size_t min_len = 0, std::size_t max_len = 8,
                                             std::size_t alphabet = 4) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len), word(0, alphabet - 1);
  std::vector<std::string> out(len(rng));
  for (auto& w : out) w = std::string(1, static_cast<char>('a' + word(rng)));
  return out;
}

// ---- kappa ----------------------------------------------------------------

struct KappaOracle {
  double fleiss = 0, randolph = 0, observed = 0;
};

// Pairwise-agreement form: for each item, the share of ordered rater pairs
// that agree.
inline KappaOracle kappas(const std::vector<std::vector<int>>& counts, int raters) {
  const std::size_t q = counts.front().size();
  double agree_sum = 0;
  std::vector<double> column(q, 0.0);
  for (const auto& row : counts) {
    double pairs = 0;
    for (std::size_t j = 0; j < q; ++j) {
      pairs += double(row[j]) * double(row[j] - 1);
      column[j] += row[j];
    }
    agree_sum += pairs / (double(raters) * double(raters - 1));
  }
  KappaOracle k;
  k.observed = agree_sum / double(counts.size());
  const double total = double(counts.size()) * raters;
  double pe = 0;
  for (double c : column) pe += (c / total) * (c / total);
  k.fleiss = (k.observed - pe) / (1 - pe);
  k.randolph = (k.observed - 1.0 / double(q)) / (1 - 1.0 / double(q));
  return k;
}

// ---- Edmundson --------------------------------------------------------------

struct EdmundsonDoc {
  std::vector<std::vector<std::string>> sentences;  // lowercase words
  std::vector<bool> paragraph_start;
  std::vector<std::string> title;
};

struct Cues {
  std::set<std::string> null_words, bonus, stigma;
};

// Scores straight from the component definitions, then picks the k-subset
// whose descending score list is largest; equal lists go to the
// lexicographically smaller index set.
inline std::vector<std::size_t> edmundson_choice(const EdmundsonDoc& d, const Cues& cues,
                                                 const std::array<double, 4>& weights, std::size_t k) {
  const std::size_t n = d.sentences.size();
  std::map<std::string, int> freq;
  for (const auto& s : d.sentences) {
    for (const auto& w : s) {
      if (!cues.null_words.contains(w)) ++freq[w];
    }
  }
  double mean = 0;
  for (const auto& [w, f] : freq) mean += f;
  mean = freq.empty() ? 0 : mean / double(freq.size());
  std::set<std::string> title;
  for (const auto& w : d.title) {
    if (!cues.null_words.contains(w)) title.insert(w);
  }
  std::vector<double> score(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = d.sentences[i];
    double loc = 0;
    if (i == 0 || i == n - 1) {
      loc = 1;
    } else if (d.paragraph_start[i]) {
      loc = 0.5;
    }
    double cue = 0, key = 0, tit = 0;
    for (const auto& w : s) {
      cue += cues.bonus.contains(w) ? 1 : cues.stigma.contains(w) ? -1 : 0;
      if (!cues.null_words.contains(w) && freq[w] >= mean) key += freq[w];
      tit += title.contains(w) ? 1 : 0;
    }
    const double len = double(s.size());
    if (len > 0) {
      cue /= len;
      key /= len;
      tit /= len;
    }
    score[i] = weights[0] * cue + weights[1] * key + weights[2] * tit + weights[3] * loc;
  }
  k = std::min(k, n);
  std::vector<std::size_t> best;
  std::vector<double> best_key;
  auto better = [](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > 1e-9) return a[i] > b[i];
    }
    return false;
  };
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<std::size_t> set;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) set.push_back(i);
    }
    std::vector<double> key;
    for (std::size_t i : set) key.push_back(score[i]);
    std::sort(key.begin(), key.end(), std::greater<>());
    if (best.empty() || better(key, best_key) || (!better(best_key, key) && set < best)) {
      best = set;
      best_key = key;
    }
  }
  return best;
}

}  // namespace oracle
