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


#include <algorithm>
#include <chrono>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "httplib.h"
#include "repodesc/corpus.hpp"
#include "repodesc/github.hpp"

namespace {

using namespace repodesc;

std::vector<RepoRecord> synthetic_records(std::size_t n) {
  std::vector<RepoRecord> out;
  for (std::size_t k = 1; k <= n; ++k) {
    RepoRecord r;
    r.full_name = "owner/repo" + std::to_string(k);
    r.description = "Tool to help parse files";
    r.readme = std::string(k, 'a');
    out.push_back(r);
  }
  return out;
}

std::set<std::string> names(const std::vector<RepoRecord>& rs) {
  std::set<std::string> out;
  for (const auto& r : rs) out.insert(r.full_name);
  return out;
}

TEST(LoadJsonl, ParsesRecord) {
  std::istringstream in(
      R"({"full_name":"onaio/onadata","description":"Collect, Analyze and Share","readme":"# onadata"})"
      "\n");
  const auto rs = load_jsonl(in);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].full_name, "onaio/onadata");
  EXPECT_EQ(rs[0].owner(), "onaio");
  EXPECT_EQ(rs[0].name(), "onadata");
  EXPECT_EQ(rs[0].description, "Collect, Analyze and Share");
  EXPECT_EQ(rs[0].language, "");
  EXPECT_EQ(rs[0].line, 1u);
}

TEST(LoadJsonl, EmptyInput) {
  std::istringstream in("");
  EXPECT_TRUE(load_jsonl(in).empty());
}

TEST(LoadJsonl, MalformedLineReportsLineNumber) {
  std::istringstream in("not json\n");
  try {
    load_jsonl(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(LoadJsonl, BadFullNameIsSchemaError) {
  std::istringstream in("\n{\"full_name\":\"no-slash\"}\n");
  try {
    load_jsonl(in);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadJsonl, MissingFileIsIoError) {
  EXPECT_THROW(load_jsonl(std::filesystem::path("/nonexistent/x.jsonl")), IoError);
}

TEST(Percentile, NearestRank) {
  std::vector<std::size_t> v(100);
  for (std::size_t i = 0; i < 100; ++i) v[i] = 100 - i;
  EXPECT_EQ(percentile_threshold(v, 62), 62u);
  EXPECT_EQ(percentile_threshold(std::vector<std::size_t>(9, 7), 62), 7u);
  for (double p : {0.5, 50.0, 99.9}) EXPECT_EQ(percentile_threshold(std::vector<std::size_t>{42}, p), 42u);
  EXPECT_THROW(percentile_threshold(std::vector<std::size_t>{}, 62), EmptyInput);
}

TEST(Curate, ThirtyEightSurvivors) {
  const auto d = curate(synthetic_records(100), CurateConfig{.seed = 4});
  EXPECT_EQ(d.length_threshold, 62u);
  EXPECT_EQ(d.stats.long_readme, 38u);
  EXPECT_EQ(d.train.size(), 30u);
  EXPECT_EQ(d.dev.size(), 3u);
  EXPECT_EQ(d.test.size(), 5u);
  std::set<std::string> all;
  for (const auto* split : {&d.train, &d.dev, &d.test}) {
    for (const auto& r : *split) {
      EXPECT_TRUE(all.insert(r.full_name).second) << "duplicate " << r.full_name;
      EXPECT_GT(r.readme.size(), 62u);
    }
  }
  EXPECT_EQ(all.size(), 38u);
}

TEST(Curate, SeededSplitsAreReproducible) {
  const auto records = synthetic_records(100);
  const auto a = curate(records, CurateConfig{.seed = 9});
  const auto b = curate(records, CurateConfig{.seed = 9});
  const auto c = curate(records, CurateConfig{.seed = 10});
  for (auto [x, y] : {std::pair{&a.train, &b.train}, std::pair{&a.dev, &b.dev}, std::pair{&a.test, &b.test}}) {
    ASSERT_EQ(x->size(), y->size());
    for (std::size_t i = 0; i < x->size(); ++i) EXPECT_EQ((*x)[i].full_name, (*y)[i].full_name);
  }
  EXPECT_NE(names(a.test), names(c.test));
}

TEST(Curate, StagesAreMonotone) {
  auto records = synthetic_records(40);
  records[0].description = "";
  records[1].description = "Apache Airflow";
  records[2].readme = "";
  records[3].description = "Collect, Analyze and Share";
  const auto d = curate(records);
  EXPECT_EQ(d.stats.input, 40u);
  EXPECT_EQ(d.stats.with_description, 39u);
  EXPECT_EQ(d.stats.with_purpose, 37u);
  EXPECT_EQ(d.stats.with_readme, 36u);
  EXPECT_LE(d.stats.long_readme, d.stats.with_readme);
  for (const auto* split : {&d.train, &d.dev, &d.test}) {
    for (const auto& r : *split) {
      EXPECT_TRUE(description_has_purpose(r.description));
      EXPECT_NE(r.full_name, "owner/repo2");
    }
  }
}

TEST(Curate, NothingLeft) {
  auto records = synthetic_records(5);
  for (auto& r : records) r.description = "Apache Airflow";
  EXPECT_THROW(curate(records), EmptyAfterFiltering);
}

TEST(Curate, WritesDataset) {
  const auto dir = std::filesystem::temp_directory_path() / "repodesc_curate_test";
  std::filesystem::remove_all(dir);
  const auto d = curate(synthetic_records(100), CurateConfig{.seed = 1});
  write_dataset(dir, d);
  EXPECT_EQ(load_jsonl(dir / "train.jsonl").size(), d.train.size());
  EXPECT_EQ(load_jsonl(dir / "test.jsonl").size(), d.test.size());
  EXPECT_TRUE(std::filesystem::exists(dir / "stats.json"));
  std::filesystem::remove_all(dir);
}

class MockGithub : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  GithubClient client() {
    GithubClientConfig cfg;
    cfg.base_url = "http://127.0.0.1:" + std::to_string(port_);
    cfg.token = "test-token";
    cfg.initial_backoff = std::chrono::milliseconds(1);
    return GithubClient(cfg);
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(MockGithub, ReturnsRawReadme) {
  std::string accept, auth;
  server_.Get("/repos/octo/hello/readme", [&](const httplib::Request& req, httplib::Response& res) {
    accept = req.get_header_value("Accept");
    auth = req.get_header_value("Authorization");
    res.set_content("# Hello", "text/plain");
  });
  EXPECT_EQ(client().fetch_readme("octo", "hello"), "# Hello");
  EXPECT_EQ(accept, "application/vnd.github.raw");
  EXPECT_EQ(auth, "Bearer test-token");
}

TEST_F(MockGithub, NotFound) {
  server_.Get("/repos/octo/missing/readme", [](const httplib::Request&, httplib::Response& res) { res.status = 404; });
  EXPECT_THROW(client().fetch_readme("octo", "missing"), NotFound);
}

TEST_F(MockGithub, RateLimitedCarriesReset) {
  server_.Get("/repos/octo/busy/readme", [](const httplib::Request&, httplib::Response& res) {
    res.status = 403;
    res.set_header("X-RateLimit-Remaining", "0");
    res.set_header("X-RateLimit-Reset", "1700000000");
  });
  try {
    client().fetch_readme("octo", "busy");
    FAIL() << "expected RateLimited";
  } catch (const RateLimited& e) {
    EXPECT_EQ(e.reset_epoch(), 1700000000);
  }
}

TEST_F(MockGithub, RetriesServerErrors) {
  int calls = 0;
  server_.Get("/repos/octo/flaky/readme", [&](const httplib::Request&, httplib::Response& res) {
    if (++calls < 3) {
      res.status = 502;
      return;
    }
    res.set_content("ok", "text/plain");
  });
  EXPECT_EQ(client().fetch_readme("octo", "flaky"), "ok");
  EXPECT_EQ(calls, 3);
}

TEST_F(MockGithub, GivesUpAfterThreeAttempts) {
  int calls = 0;
  server_.Get("/repos/octo/down/readme", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 503;
  });
  EXPECT_THROW(client().fetch_readme("octo", "down"), NetworkError);
  EXPECT_EQ(calls, 3);
}

TEST_F(MockGithub, RejectsBadNames) { EXPECT_THROW(client().fetch_readme("octo", "../x"), DataError); }

}  // namespace
