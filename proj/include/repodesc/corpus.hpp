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

// Repository records and the curation pipeline:
//
//   1. drop records without a description
//   2. keep descriptions where the purpose pattern fires
//   3. drop records without a README
//   4. keep READMEs strictly longer than the nearest-rank percentile of the
//      remaining preprocessed lengths (characters)
//   5. seeded shuffle, then floor(0.8N) / floor(0.1N) / rest split

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "repodesc/error.hpp"
#include "repodesc/purpose.hpp"
#include "repodesc/textcore.hpp"

namespace repodesc {

struct RepoRecord {
  std::string full_name;
  std::string description;
  std::string readme;
  std::string language;
  std::size_t line = 0;  // 1-based source line, 0 when built in memory

  std::string_view owner() const { return std::string_view(full_name).substr(0, full_name.find('/')); }
  std::string_view name() const { return std::string_view(full_name).substr(full_name.find('/') + 1); }
};

inline bool valid_full_name(std::string_view s) {
  const auto slash = s.find('/');
  return slash != std::string_view::npos && slash > 0 && slash + 1 < s.size() &&
         s.find('/', slash + 1) == std::string_view::npos;
}

namespace detail {

inline std::string optional_string(const nlohmann::json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw SchemaError(line, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace detail

inline RepoRecord record_from_json(const nlohmann::json& j, std::size_t line) {
  if (!j.is_object()) throw ParseError(line, "expected a JSON object");
  auto it = j.find("full_name");
  if (it == j.end() || !it->is_string()) throw SchemaError(line, "missing string field 'full_name'");
  RepoRecord r;
  r.full_name = it->get<std::string>();
  if (!valid_full_name(r.full_name)) throw SchemaError(line, "full_name must look like owner/name: " + r.full_name);
  r.description = detail::optional_string(j, "description", line);
  r.readme = detail::optional_string(j, "readme", line);
  r.language = detail::optional_string(j, "language", line);
  r.line = line;
  return r;
}

inline nlohmann::json record_to_json(const RepoRecord& r) {
  return {{"full_name", r.full_name}, {"description", r.description}, {"readme", r.readme}, {"language", r.language}};
}

// One JSON object per line; blank lines are skipped but still counted.
inline std::vector<RepoRecord> load_jsonl(std::istream& in) {
  std::vector<RepoRecord> out;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (detail::is_blank(text)) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line, e.what());
    }
    out.push_back(record_from_json(j, line));
  }
  return out;
}

inline std::vector<RepoRecord> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  return load_jsonl(in);
}

// Nearest-rank percentile: the value at rank ceil(p/100 * N) (1-based) of
// the sorted list.
inline std::size_t percentile_threshold(std::span<const std::size_t> lengths, double p) {
  if (lengths.empty()) throw EmptyInput("percentile of an empty list");
  if (!(p > 0.0 && p < 100.0)) throw DataError("percentile must lie strictly between 0 and 100");
  std::vector<std::size_t> sorted(lengths.begin(), lengths.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * n / 100.0));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

inline std::size_t readme_length(std::string_view readme_markdown) {
  return utf8_length(preprocess_markdown(readme_markdown));
}

struct CurationStats {
  std::size_t input = 0;
  std::size_t with_description = 0;
  std::size_t with_purpose = 0;
  std::size_t with_readme = 0;
  std::size_t long_readme = 0;
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
};

struct CuratedDataset {
  std::vector<RepoRecord> train, dev, test;
  CurationStats stats;
  std::size_t length_threshold = 0;
};

struct CurateConfig {
  PatternConfig pattern;
  double percentile = 62.0;
  double train_fraction = 0.8;
  double dev_fraction = 0.1;
  std::uint64_t seed = 0;

  void validate() const {
    if (train_fraction < 0.0 || dev_fraction < 0.0 || train_fraction + dev_fraction > 1.0) {
      throw DataError("split fractions must be non-negative and sum to at most 1");
    }
  }
};

namespace detail {

inline std::size_t split_size(double fraction, std::size_t n) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

}  // namespace detail

inline CuratedDataset curate(std::span<const RepoRecord> records, const CurateConfig& config = {},
                             const TextResources& res = TextResources::defaults()) {
  config.validate();
  CuratedDataset out;
  out.stats.input = records.size();

  std::vector<const RepoRecord*> kept;
  for (const auto& r : records) {
    if (!detail::is_blank(r.description)) kept.push_back(&r);
  }
  out.stats.with_description = kept.size();

  std::erase_if(kept, [&](const RepoRecord* r) { return !description_has_purpose(r->description, config.pattern, res); });
  out.stats.with_purpose = kept.size();

  std::erase_if(kept, [](const RepoRecord* r) { return detail::is_blank(r->readme); });
  out.stats.with_readme = kept.size();
  if (kept.empty()) throw EmptyAfterFiltering();

  std::vector<std::size_t> lengths;
  lengths.reserve(kept.size());
  for (const RepoRecord* r : kept) lengths.push_back(readme_length(r->readme));
  out.length_threshold = percentile_threshold(lengths, config.percentile);
  std::vector<const RepoRecord*> survivors;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (lengths[i] > out.length_threshold) survivors.push_back(kept[i]);
  }
  out.stats.long_readme = survivors.size();
  if (survivors.empty()) throw EmptyAfterFiltering();

  std::mt19937_64 rng(config.seed);
  for (std::size_t i = survivors.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(survivors[i - 1], survivors[pick(rng)]);
  }
  const std::size_t n = survivors.size();
  const std::size_t n_train = detail::split_size(config.train_fraction, n);
  const std::size_t n_dev = detail::split_size(config.dev_fraction, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& dst = i < n_train ? out.train : i < n_train + n_dev ? out.dev : out.test;
    dst.push_back(*survivors[i]);
  }
  out.stats.train = out.train.size();
  out.stats.dev = out.dev.size();
  out.stats.test = out.test.size();
  return out;
}

inline nlohmann::json stats_to_json(const CuratedDataset& d) {
  const auto& s = d.stats;
  return {{"input", s.input},
          {"with_description", s.with_description},
          {"with_purpose", s.with_purpose},
          {"with_readme", s.with_readme},
          {"long_readme", s.long_readme},
          {"length_threshold", d.length_threshold},
          {"train", s.train},
          {"dev", s.dev},
          {"test", s.test}};
}

inline void write_jsonl(const std::filesystem::path& path, std::span<const RepoRecord> records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

// train.jsonl, dev.jsonl, test.jsonl and stats.json under `dir`.
inline void write_dataset(const std::filesystem::path& dir, const CuratedDataset& d) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_jsonl(dir / "train.jsonl", d.train);
  write_jsonl(dir / "dev.jsonl", d.dev);
  write_jsonl(dir / "test.jsonl", d.test);
  std::ofstream stats(dir / "stats.json");
  if (!stats) throw IoError("cannot write " + (dir / "stats.json").string());
  stats << stats_to_json(d).dump(2) << '\n';
}

}  // namespace repodesc
