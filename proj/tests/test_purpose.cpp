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


#include <random>
#include <string>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "oracles.hpp"
#include "repodesc/purpose.hpp"

namespace {

using namespace repodesc;

struct Expected {
  std::string description;
  std::string ptoken;
  std::string verb;
};

TEST(Purpose, MatchesPublishedExamples) {
  const Expected cases[] = {
      {"Library to help control your projector over a serial connection.", "to", "help"},
      {"A JavaScript library for composing Ethereum provider objects using middleware modules.", "for", "composing"},
      {"A simple, declarative API for creating cross-platform, native-appearing forms with React Native", "for",
       "creating"},
  };
  for (const auto& c : cases) {
    const auto p = find_purpose(c.description);
    ASSERT_TRUE(p.matched) << c.description;
    EXPECT_EQ(p.sentence.at1(p.match.ptoken_index).token.normalized, c.ptoken);
    EXPECT_EQ(p.match.verb.surface, c.verb);
  }
}

TEST(Purpose, SpanStartsAtPtoken) {
  const auto p = find_purpose("Library to help control your projector over a serial connection.");
  ASSERT_TRUE(p.matched);
  EXPECT_EQ(p.match.span_text(p.sentence).rfind("to help control your projector", 0), 0u);
}

TEST(Purpose, NonMatches) {
  for (const std::string d : {"Apache Airflow", "Collect, Analyze and Share", "Bluemix API with Go"}) {
    EXPECT_FALSE(description_has_purpose(d)) << d;
  }
}

TEST(Purpose, MinLengthBoundary) {
  const auto s = tag_text("Tool to go");
  ASSERT_EQ(s.size(), 1u);
  const auto m = match_purpose(s[0]);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->ptoken_index, 2u);
  PatternConfig strict;
  strict.min_length = 3;
  EXPECT_FALSE(match_purpose(s[0], strict).has_value());
}

TEST(Purpose, LeadingPtokenNeverMatches) {
  const auto s = build::sentence({{"To", "help", "x"}, {"TO", "VB", "NN"}});
  EXPECT_FALSE(match_purpose(s).has_value());
}

TEST(Purpose, CaseInsensitivePtoken) {
  const auto s = build::sentence({{"Tool", "FOR", "making", "x"}, {"NN", "IN", "VBG", "NN"}});
  ASSERT_TRUE(match_purpose(s).has_value());
}

TEST(Purpose, AnyMatchingSentenceQualifies) {
  EXPECT_TRUE(description_has_purpose("Apache Airflow. A tool for building pipelines."));
}

TEST(Purpose, AgreesWithBruteForce) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> min_len(1, 4);
  int disagreements = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto words = oracle::random_tagged_words(rng);
    PatternConfig cfg;
    cfg.min_length = min_len(rng);
    const auto got = match_purpose(build::sentence(words), cfg);
    const auto want = oracle::purpose_index(words, cfg.min_length);
    if (got.has_value() != want.has_value() || (got && got->ptoken_index != *want)) ++disagreements;
    if (got) EXPECT_GT(got->ptoken_index, 1u);
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(Purpose, LoweringMinLengthKeepsMatches) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto s = build::sentence(oracle::random_tagged_words(rng));
    for (std::size_t k = 5; k > 1; --k) {
      PatternConfig hi, lo;
      hi.min_length = k;
      lo.min_length = k - 1;
      if (match_purpose(s, hi)) EXPECT_TRUE(match_purpose(s, lo).has_value());
    }
  }
}

}  // namespace
