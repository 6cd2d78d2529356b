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


#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "repodesc/lsptest.hpp"

namespace {

using namespace repodesc;

struct Row {
  std::string description;
  std::string language;
  bool lang, st, purp;
};

const std::vector<Row>& published_rows() {
  static const std::vector<Row> rows = {
      {"SignalR client library written in pure Swift", "Swift", true, true, true},
      {"Bluemix API with Go", "Go", true, true, false},
      {"A lightweight, fast and extensible game server for Minecraft", "C++", false, false, true},
      {"Apache Airflow", "Python", false, true, false},
      {"raspberrypi3 balenaCloud stack with Pi-hole, PADD, & dnscrypt-proxy", "Dockerfile", false, true, false},
  };
  return rows;
}

TEST(LspRater, ReproducesPublishedRatings) {
  for (const auto& r : published_rows()) {
    const auto got = rate_description(r.description, r.language, default_lexicons());
    EXPECT_EQ(got.language, r.lang) << r.description;
    EXPECT_EQ(got.software_tech, r.st) << r.description;
    EXPECT_EQ(got.purpose, r.purp) << r.description;
  }
}

TEST(LspRater, EvidenceForEverySetBit) {
  for (const auto& r : published_rows()) {
    const auto got = rate_description(r.description, r.language, default_lexicons());
    for (auto c : kLspCategories) {
      if (got.get(c)) {
        ASSERT_TRUE(got.evidence.contains(c));
        EXPECT_FALSE(got.evidence.at(c).empty());
      }
    }
  }
}

TEST(LspRater, PurposePatternImpliesPurposeBit) {
  for (const std::string d : {"Library to help control your projector over a serial connection.",
                              "A JavaScript library for composing Ethereum provider objects using middleware modules.",
                              "Tool to go"}) {
    EXPECT_TRUE(rate_description(d, "", default_lexicons()).purpose) << d;
  }
}

TEST(LspRater, EmptyDescriptionThrows) {
  EXPECT_THROW(rate_description("  ", "Go", default_lexicons()), EmptyDescription);
}

TEST(LspStats, LanguageShareOf385) {
  std::vector<LspRating> ratings(385);
  for (std::size_t i = 0; i < 79; ++i) ratings[i].language = true;
  const auto st = corpus_lsp_stats(ratings);
  EXPECT_EQ(st.count(LspCategory::Language), 79u);
  EXPECT_NEAR(st.percent(LspCategory::Language), 20.52, 0.005);
}

TEST(LspStats, AllZero) {
  const std::vector<LspRating> ratings(7);
  const auto st = corpus_lsp_stats(ratings);
  for (auto c : kLspCategories) EXPECT_EQ(st.percent(c), 0.0);
  EXPECT_EQ(st.all_three_percent(), 0.0);
}

TEST(LspStats, AllThreeShare) {
  std::vector<LspRating> ratings(10);
  for (std::size_t i = 0; i < 5; ++i) ratings[i] = LspRating{true, true, true, {}};
  ratings[7].language = true;
  EXPECT_EQ(corpus_lsp_stats(ratings).all_three_percent(), 50.0);
}

TEST(LspStats, EmptyThrows) { EXPECT_THROW(corpus_lsp_stats(std::vector<LspRating>{}), EmptyInput); }

}  // namespace
