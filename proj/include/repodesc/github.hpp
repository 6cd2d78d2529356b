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

// README client for the GitHub REST API (GET /repos/{owner}/{repo}/readme,
// raw media type). The token is read from GITHUB_TOKEN unless given.
// Requires linking with the repodesc_github target.

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "httplib.h"
#include "repodesc/error.hpp"

namespace repodesc {

inline constexpr std::string_view kGithubApiUrl = "https://api.github.com";
inline constexpr const char* kGithubTokenEnv = "GITHUB_TOKEN";

// Server-reported request quota shared by every caller of one client.
class RateBudget {
 public:
  // Throws RateLimited when the last response said the quota is spent and
  // the reset time has not passed yet.
  void acquire() {
    std::lock_guard lock(mu_);
    if (!remaining_) return;
    if (*remaining_ == 0) {
      const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
      if (reset_ > now) throw RateLimited("GitHub rate limit exhausted", reset_);
      remaining_.reset();
      return;
    }
    --*remaining_;
  }

  void update(const httplib::Headers& headers) {
    std::lock_guard lock(mu_);
    if (auto it = headers.find("X-RateLimit-Remaining"); it != headers.end()) {
      remaining_ = std::strtoll(it->second.c_str(), nullptr, 10);
    }
    if (auto it = headers.find("X-RateLimit-Reset"); it != headers.end()) {
      reset_ = std::strtoll(it->second.c_str(), nullptr, 10);
    }
  }

  std::optional<std::int64_t> remaining() const {
    std::lock_guard lock(mu_);
    return remaining_;
  }

 private:
  mutable std::mutex mu_;
  std::optional<std::int64_t> remaining_;
  std::int64_t reset_ = 0;
};

struct GithubClientConfig {
  std::string base_url = std::string(kGithubApiUrl);
  std::optional<std::string> token;  // falls back to GITHUB_TOKEN
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{30};
  std::string user_agent = "repodesc";
};

class GithubClient {
 public:
  explicit GithubClient(GithubClientConfig config = {}) : config_(std::move(config)) {
    if (!config_.token) {
      if (const char* env = std::getenv(kGithubTokenEnv); env != nullptr && *env != '\0') config_.token = env;
    }
  }

  // Raw README text of owner/repo.
  std::string fetch_readme(std::string_view owner, std::string_view repo) {
    if (!valid_component(owner) || !valid_component(repo)) {
      throw DataError("invalid repository name: " + std::string(owner) + "/" + std::string(repo));
    }
    const std::string path = "/repos/" + std::string(owner) + "/" + std::string(repo) + "/readme";
    httplib::Headers headers = {{"Accept", "application/vnd.github.raw"},
                                {"User-Agent", config_.user_agent},
                                {"X-GitHub-Api-Version", "2022-11-28"}};
    if (config_.token) headers.emplace("Authorization", "Bearer " + *config_.token);

    auto backoff = config_.initial_backoff;
    std::string last_error;
    for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
      budget_.acquire();
      httplib::Client client(config_.base_url);
      client.set_connection_timeout(config_.timeout);
      client.set_read_timeout(config_.timeout);
      client.set_follow_location(true);
      auto res = client.Get(path, headers);
      if (res) {
        budget_.update(res->headers);
        const int status = res->status;
        if (status == 200) return res->body;
        if (status == 404) throw NotFound("no README for " + std::string(owner) + "/" + std::string(repo));
        if (status == 429 || (status == 403 && res->get_header_value("X-RateLimit-Remaining") == "0")) {
          const auto reset = std::strtoll(res->get_header_value("X-RateLimit-Reset").c_str(), nullptr, 10);
          throw RateLimited("GitHub rate limit exceeded (HTTP " + std::to_string(status) + ")", reset);
        }
        if (status < 500) throw NetworkError("GitHub returned HTTP " + std::to_string(status) + " for " + path);
        last_error = "HTTP " + std::to_string(status);
      } else {
        last_error = httplib::to_string(res.error());
      }
      if (attempt < config_.max_attempts) {
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
      }
    }
    throw NetworkError("GitHub request failed after " + std::to_string(config_.max_attempts) +
                       " attempts: " + last_error);
  }

  const RateBudget& budget() const { return budget_; }

 private:
  static bool valid_component(std::string_view s) {
    if (s.empty() || s == "." || s == "..") return false;
    for (char c : s) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                      c == '_' || c == '.';
      if (!ok) return false;
    }
    return true;
  }

  GithubClientConfig config_;
  RateBudget budget_;
};

inline std::string fetch_readme(std::string_view owner, std::string_view repo,
                                std::optional<std::string> auth_token = std::nullopt) {
  GithubClientConfig cfg;
  cfg.token = std::move(auth_token);
  GithubClient client(std::move(cfg));
  return client.fetch_readme(owner, repo);
}

}  // namespace repodesc
