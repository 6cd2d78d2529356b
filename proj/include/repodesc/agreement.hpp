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

// Multi-rater agreement: Fleiss' kappa (fixed marginals) and Randolph's
// free-marginal kappa, over an items x categories count matrix.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "repodesc/error.hpp"

namespace repodesc {

struct RatingMatrix {
  std::vector<std::string> categories;
  std::vector<std::vector<int>> counts;  // counts[item][category] = raters choosing it
  int raters = 0;

  std::size_t items() const noexcept { return counts.size(); }

  // Builds the count matrix from per-item rater labels. When `categories`
  // is empty the sorted set of observed labels is used.
  static RatingMatrix from_labels(const std::vector<std::vector<std::string>>& labels,
                                  std::vector<std::string> categories = {}) {
    if (labels.empty()) throw EmptyInput("rating matrix has no items");
    if (categories.empty()) {
      for (const auto& row : labels) categories.insert(categories.end(), row.begin(), row.end());
      std::sort(categories.begin(), categories.end());
      categories.erase(std::unique(categories.begin(), categories.end()), categories.end());
    }
    RatingMatrix m;
    m.categories = std::move(categories);
    m.raters = static_cast<int>(labels.front().size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (static_cast<int>(labels[i].size()) != m.raters) {
        throw DataError("item " + std::to_string(i + 1) + " has " + std::to_string(labels[i].size()) +
                        " ratings, expected " + std::to_string(m.raters));
      }
      std::vector<int> row(m.categories.size(), 0);
      for (const auto& l : labels[i]) {
        auto it = std::find(m.categories.begin(), m.categories.end(), l);
        if (it == m.categories.end()) throw DataError("unknown category label '" + l + "'");
        ++row[static_cast<std::size_t>(it - m.categories.begin())];
      }
      m.counts.push_back(std::move(row));
    }
    m.validate(1);
    return m;
  }

  void validate(std::size_t min_categories = 2) const {
    if (counts.empty()) throw EmptyInput("rating matrix has no items");
    if (raters < 2) throw DataError("agreement needs at least two raters");
    if (categories.size() < min_categories) throw DataError("agreement needs at least two categories");
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i].size() != categories.size()) throw DataError("row width differs from category count");
      int sum = 0;
      for (int c : counts[i]) {
        if (c < 0) throw DataError("negative rating count");
        sum += c;
      }
      if (sum != raters) {
        throw DataError("item " + std::to_string(i + 1) + " row sums to " + std::to_string(sum) + ", expected " +
                        std::to_string(raters));
      }
    }
  }
};

// Landis & Koch style reading of a kappa value. Band edges are closed at
// two decimals: [0.61, 0.80] Substantial, [0.81, 1.00] Almost Perfect.
inline std::string_view kappa_band(double kappa) {
  if (kappa < 0.0) return "Poor";
  if (kappa <= 0.20) return "Slight";
  if (kappa <= 0.40) return "Fair";
  if (kappa <= 0.60) return "Moderate";
  if (kappa <= 0.80) return "Substantial";
  return "Almost Perfect";
}

struct KappaResult {
  double kappa = 0.0;
  double observed = 0.0;  // mean per-item agreement, P-bar
  double expected = 0.0;  // chance agreement, P-bar_e
  std::string band;
};

namespace detail {

inline double mean_item_agreement(const RatingMatrix& m) {
  const double k = m.raters;
  double total = 0.0;
  for (const auto& row : m.counts) {
    double sq = 0.0;
    for (int c : row) sq += static_cast<double>(c) * c;
    total += (sq - k) / (k * (k - 1.0));
  }
  return total / static_cast<double>(m.items());
}

}  // namespace detail

inline KappaResult fleiss_kappa(const RatingMatrix& m) {
  m.validate(1);
  const double n_ratings = static_cast<double>(m.items()) * m.raters;
  double expected = 0.0;
  for (std::size_t j = 0; j < m.categories.size(); ++j) {
    double col = 0.0;
    for (const auto& row : m.counts) col += row[j];
    const double p = col / n_ratings;
    expected += p * p;
  }
  if (expected >= 1.0) throw Degenerate();
  KappaResult r;
  r.observed = detail::mean_item_agreement(m);
  r.expected = expected;
  r.kappa = (r.observed - expected) / (1.0 - expected);
  r.band = std::string(kappa_band(r.kappa));
  return r;
}

// Free-marginal kappa: chance agreement is 1/q for q categories. `observed`
// doubles as the overall percent agreement (as a fraction).
inline KappaResult randolph_kappa(const RatingMatrix& m) {
  m.validate();
  KappaResult r;
  r.observed = detail::mean_item_agreement(m);
  r.expected = 1.0 / static_cast<double>(m.categories.size());
  r.kappa = (r.observed - r.expected) / (1.0 - r.expected);
  r.band = std::string(kappa_band(r.kappa));
  return r;
}

}  // namespace repodesc
