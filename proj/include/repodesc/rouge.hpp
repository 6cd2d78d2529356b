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

// ROUGE-N (clipped n-gram overlap) and ROUGE-L (longest common
// subsequence) over lowercased tokens, plus macro-averaged corpus reports.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <iomanip>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "repodesc/error.hpp"
#include "repodesc/textcore.hpp"

namespace repodesc {

enum class RougeVariant { R1, R2, RL };

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  RougeVariant variant = RougeVariant::R1;
};

namespace detail {

inline double f_measure(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

inline RougeScore make_score(double overlap, double cand_total, double ref_total, RougeVariant v) {
  RougeScore s;
  s.variant = v;
  s.precision = cand_total > 0.0 ? overlap / cand_total : 0.0;
  s.recall = ref_total > 0.0 ? overlap / ref_total : 0.0;
  s.f1 = f_measure(s.precision, s.recall);
  return s;
}

inline std::map<std::vector<std::string_view>, int> ngram_counts(std::span<const std::string> toks, std::size_t n) {
  std::map<std::vector<std::string_view>, int> counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::vector<std::string_view> key(toks.begin() + static_cast<std::ptrdiff_t>(i),
                                      toks.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++counts[key];
  }
  return counts;
}

inline std::vector<std::string> normalized(std::span<const Token> toks) {
  std::vector<std::string> out;
  out.reserve(toks.size());
  for (const auto& t : toks) out.push_back(t.normalized);
  return out;
}

}  // namespace detail

inline RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, int n) {
  if (n < 1) throw InvalidN(n);
  const auto un = static_cast<std::size_t>(n);
  const auto cand = detail::ngram_counts(candidate, un);
  const auto ref = detail::ngram_counts(reference, un);
  double overlap = 0.0;
  for (const auto& [gram, c] : cand) {
    if (auto it = ref.find(gram); it != ref.end()) overlap += std::min(c, it->second);
  }
  const double cand_total = candidate.size() >= un ? static_cast<double>(candidate.size() - un + 1) : 0.0;
  const double ref_total = reference.size() >= un ? static_cast<double>(reference.size() - un + 1) : 0.0;
  const RougeVariant v = n == 1 ? RougeVariant::R1 : RougeVariant::R2;
  return detail::make_score(overlap, cand_total, ref_total, v);
}

inline RougeScore rouge_n(std::span<const Token> candidate, std::span<const Token> reference, int n) {
  return rouge_n(detail::normalized(candidate), detail::normalized(reference), n);
}

inline std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference) {
  const double l = static_cast<double>(lcs_length(candidate, reference));
  return detail::make_score(l, static_cast<double>(candidate.size()), static_cast<double>(reference.size()),
                            RougeVariant::RL);
}

inline RougeScore rouge_l(std::span<const Token> candidate, std::span<const Token> reference) {
  return rouge_l(detail::normalized(candidate), detail::normalized(reference));
}

// ROUGE-L F1 between two raw strings, tokenized and lowercased.
inline double rouge_l_f1(std::string_view candidate, std::string_view reference) {
  return rouge_l(tokenize(candidate), tokenize(reference)).f1;
}

struct RougeTriple {
  RougeScore r1{0, 0, 0, RougeVariant::R1};
  RougeScore r2{0, 0, 0, RougeVariant::R2};
  RougeScore rl{0, 0, 0, RougeVariant::RL};
};

inline RougeTriple score_pair(std::span<const Token> candidate, std::span<const Token> reference) {
  const auto c = detail::normalized(candidate);
  const auto r = detail::normalized(reference);
  return {rouge_n(c, r, 1), rouge_n(c, r, 2), rouge_l(c, r)};
}

// Macro average of per-pair precision, recall and F1 for each variant.
inline RougeTriple evaluate_corpus(std::span<const std::pair<std::vector<Token>, std::vector<Token>>> pairs) {
  if (pairs.empty()) throw EmptyInput("evaluate_corpus: no pairs");
  RougeTriple sum;
  auto acc = [](RougeScore& into, const RougeScore& s) {
    into.precision += s.precision;
    into.recall += s.recall;
    into.f1 += s.f1;
  };
  for (const auto& [cand, ref] : pairs) {
    const auto t = score_pair(cand, ref);
    acc(sum.r1, t.r1);
    acc(sum.r2, t.r2);
    acc(sum.rl, t.rl);
  }
  const double n = static_cast<double>(pairs.size());
  for (RougeScore* s : {&sum.r1, &sum.r2, &sum.rl}) {
    s->precision /= n;
    s->recall /= n;
    s->f1 /= n;
  }
  return sum;
}

inline RougeTriple evaluate_corpus(std::span<const std::pair<std::string, std::string>> pairs) {
  std::vector<std::pair<std::vector<Token>, std::vector<Token>>> toks;
  toks.reserve(pairs.size());
  for (const auto& [c, r] : pairs) toks.emplace_back(tokenize(c), tokenize(r));
  return evaluate_corpus(toks);
}

// One row per method, columns in the order R1 F1/P/R, R2 F1/P/R, RL F1/P/R.
struct RougeReport {
  std::vector<std::pair<std::string, RougeTriple>> rows;

  static std::array<double, 9> cells(const RougeTriple& t) {
    return {t.r1.f1, t.r1.precision, t.r1.recall, t.r2.f1, t.r2.precision,
            t.r2.recall, t.rl.f1, t.rl.precision, t.rl.recall};
  }

  static constexpr std::array<std::string_view, 9> kColumns = {
      "R1-F1", "R1-P", "R1-R", "R2-F1", "R2-P", "R2-R", "RL-F1", "RL-P", "RL-R"};

  void write_csv(std::ostream& out) const {
    out << "method";
    for (auto c : kColumns) out << ',' << c;
    out << '\n';
    for (const auto& [name, t] : rows) {
      out << name;
      for (double v : cells(t)) out << ',' << std::fixed << std::setprecision(2) << 100.0 * v;
      out << '\n';
    }
  }

  void write_table(std::ostream& out) const {
    std::size_t width = 6;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    out << std::left << std::setw(static_cast<int>(width)) << "method";
    for (auto c : kColumns) out << "  " << std::right << std::setw(7) << c;
    out << '\n';
    for (const auto& [name, t] : rows) {
      out << std::left << std::setw(static_cast<int>(width)) << name;
      for (double v : cells(t)) {
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(2) << 100.0 * v << '%';
        out << "  " << std::right << std::setw(7) << cell.str();
      }
      out << '\n';
    }
  }
};

}  // namespace repodesc
