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
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "oracles.hpp"
#include "repodesc/rouge.hpp"

namespace {

using namespace repodesc;
using Words = std::vector<std::string>;

TEST(Rouge, HandFixtures) {
  const Words c = {"a", "b", "c"}, r = {"a", "b", "d"};
  const auto r1 = rouge_n(c, r, 1);
  EXPECT_DOUBLE_EQ(r1.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(r1.recall, 2.0 / 3.0);
  const auto r2 = rouge_n(c, r, 2);
  EXPECT_DOUBLE_EQ(r2.precision, 0.5);
  EXPECT_DOUBLE_EQ(r2.recall, 0.5);
  const auto rl = rouge_l(Words{"a", "c", "b"}, Words{"a", "b", "c"});
  EXPECT_DOUBLE_EQ(rl.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(rl.recall, 2.0 / 3.0);
}

TEST(Rouge, EmptyCandidateScoresZero) {
  const Words empty, r = {"a", "b"};
  for (const auto& s : {rouge_n(empty, r, 1), rouge_n(empty, r, 2), rouge_l(empty, r)}) {
    EXPECT_EQ(s.precision, 0.0);
    EXPECT_EQ(s.recall, 0.0);
    EXPECT_EQ(s.f1, 0.0);
  }
}

TEST(Rouge, InvalidN) { EXPECT_THROW(rouge_n(Words{"a"}, Words{"a"}, 0), InvalidN); }

TEST(Rouge, Clipping) {
  const auto s = rouge_n(Words{"the", "the", "the"}, Words{"the", "cat"}, 1);
  EXPECT_DOUBLE_EQ(s.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
}

TEST(Rouge, CaseInsensitiveOnTokens) {
  EXPECT_DOUBLE_EQ(rouge_l(tokenize("SignalR Client"), tokenize("signalr client")).f1, 1.0);
}

TEST(Rouge, Identity) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = oracle::random_words(rng, 2, 12);
    EXPECT_DOUBLE_EQ(rouge_n(x, x, 1).f1, 1.0);
    EXPECT_DOUBLE_EQ(rouge_n(x, x, 2).f1, 1.0);
    EXPECT_DOUBLE_EQ(rouge_l(x, x).f1, 1.0);
  }
}

TEST(Rouge, SwapDuality) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::random_words(rng), b = oracle::random_words(rng);
    for (int n : {1, 2}) EXPECT_EQ(rouge_n(a, b, n).precision, rouge_n(b, a, n).recall);
    EXPECT_EQ(rouge_l(a, b).precision, rouge_l(b, a).recall);
  }
}

TEST(Rouge, AgreesWithOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = oracle::random_words(rng), r = oracle::random_words(rng);
    for (int n : {1, 2}) {
      const auto got = rouge_n(c, r, n);
      const auto want = oracle::rouge_n(c, r, static_cast<std::size_t>(n));
      EXPECT_NEAR(got.precision, want.p, 1e-12);
      EXPECT_NEAR(got.recall, want.r, 1e-12);
      EXPECT_NEAR(got.f1, want.f, 1e-12);
    }
    const auto got = rouge_l(c, r);
    const auto want = oracle::rouge_l(c, r);
    EXPECT_NEAR(got.precision, want.p, 1e-12);
    EXPECT_NEAR(got.recall, want.r, 1e-12);
    EXPECT_NEAR(got.f1, want.f, 1e-12);
  }
}

TEST(Rouge, LcsAtLeastCommonPrefix) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::random_words(rng, 0, 10, 2), b = oracle::random_words(rng, 0, 10, 2);
    std::size_t prefix = 0;
    while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) ++prefix;
    EXPECT_GE(lcs_length(a, b), prefix);
  }
}

TEST(Corpus, MacroAverage) {
  const std::vector<std::pair<std::string, std::string>> pairs = {{"a b c", "a b c"}, {"x y", "p q"}};
  EXPECT_DOUBLE_EQ(evaluate_corpus(pairs).rl.f1, 0.5);
  EXPECT_DOUBLE_EQ(evaluate_corpus(std::vector<std::pair<std::string, std::string>>{{"a b c", "a b d"}}).r1.f1,
                   2.0 / 3.0);
  EXPECT_THROW(evaluate_corpus(std::vector<std::pair<std::string, std::string>>{}), EmptyInput);
}

TEST(Corpus, AgreesWithOracleMeans) {
  std::mt19937_64 rng(5);
  std::vector<std::pair<std::vector<Token>, std::vector<Token>>> pairs;
  oracle::Prf sum1, sum2, suml;
  for (int i = 0; i < 50; ++i) {
    const auto c = oracle::random_words(rng), r = oracle::random_words(rng);
    pairs.emplace_back(build::tokens(c), build::tokens(r));
    for (auto [acc, s] : {std::pair{&sum1, oracle::rouge_n(c, r, 1)}, std::pair{&sum2, oracle::rouge_n(c, r, 2)},
                          std::pair{&suml, oracle::rouge_l(c, r)}}) {
      acc->p += s.p;
      acc->r += s.r;
      acc->f += s.f;
    }
  }
  const auto got = evaluate_corpus(pairs);
  for (auto [g, w] : {std::pair{got.r1, sum1}, std::pair{got.r2, sum2}, std::pair{got.rl, suml}}) {
    EXPECT_NEAR(g.precision, w.p / 50, 1e-12);
    EXPECT_NEAR(g.recall, w.r / 50, 1e-12);
    EXPECT_NEAR(g.f1, w.f / 50, 1e-12);
  }
}

TEST(Report, CsvLayout) {
  RougeReport rep;
  rep.rows.emplace_back("leading", evaluate_corpus(std::vector<std::pair<std::string, std::string>>{{"a b", "a b"}}));
  std::ostringstream out;
  rep.write_csv(out);
  EXPECT_EQ(out.str(),
            "method,R1-F1,R1-P,R1-R,R2-F1,R2-P,R2-R,RL-F1,RL-P,RL-R\n"
            "leading,100.00,100.00,100.00,100.00,100.00,100.00,100.00,100.00,100.00\n");
}

}  // namespace
