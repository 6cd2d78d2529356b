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

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "repodesc/error.hpp"

namespace repodesc::abstractsum {

using TokenId = int;

class Vocab {
 public:
  static constexpr TokenId kPad = 0;
  static constexpr TokenId kUnk = 1;
  static constexpr TokenId kBos = 2;
  static constexpr TokenId kEos = 3;
  static constexpr std::size_t kReserved = 4;

  Vocab() : token_of_{"<pad>", "<unk>", "<s>", "</s>"} {
    for (std::size_t i = 0; i < token_of_.size(); ++i) id_of_[token_of_[i]] = static_cast<TokenId>(i);
  }

  // Rebuilds a vocabulary from its id-ordered token list (checkpoints).
  static Vocab from_tokens(std::vector<std::string> tokens) {
    Vocab v;
    if (tokens.size() < kReserved) throw DataError("vocabulary is missing reserved tokens");
    for (std::size_t i = 0; i < kReserved; ++i) {
      if (tokens[i] != v.token_of_[i]) throw DataError("vocabulary reserved tokens out of order");
    }
    for (std::size_t i = kReserved; i < tokens.size(); ++i) v.add(tokens[i]);
    return v;
  }

  TokenId add(const std::string& token) {
    if (auto it = id_of_.find(token); it != id_of_.end()) return it->second;
    const auto id = static_cast<TokenId>(token_of_.size());
    token_of_.push_back(token);
    id_of_.emplace(token, id);
    return id;
  }

  TokenId id(const std::string& token) const {
    auto it = id_of_.find(token);
    return it == id_of_.end() ? kUnk : it->second;
  }
  bool contains(const std::string& token) const { return id_of_.contains(token); }
  const std::string& token(TokenId id) const { return token_of_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const noexcept { return token_of_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return token_of_; }

 private:
  std::vector<std::string> token_of_;
  std::unordered_map<std::string, TokenId> id_of_;
};

// Keeps the `cap` most frequent tokens (ties broken lexicographically) after
// the reserved ids. `cap` counts non-reserved tokens.
inline Vocab build_vocab(std::span<const std::vector<std::string>> corpus, std::size_t cap) {
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& doc : corpus) {
    for (const auto& t : doc) ++freq[t];
  }
  if (freq.empty()) throw EmptyCorpus();
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  Vocab v;
  for (const auto& [tok, n] : ranked) {
    if (v.size() - Vocab::kReserved >= cap) break;
    v.add(tok);
  }
  return v;
}

// Source sequence with pointer-generator extended ids: in-vocabulary tokens
// keep their id; each distinct OOV token gets id vocab.size() + k.
struct SourceEncoding {
  std::vector<std::string> tokens;
  std::vector<TokenId> ids;      // OOV -> kUnk, fed to the encoder
  std::vector<TokenId> ext_ids;  // OOV -> extended id, used by the copy path
  std::vector<std::string> oovs;

  std::size_t extended_size(const Vocab& v) const { return v.size() + oovs.size(); }

  // Extended id of a target token: vocab id, source OOV id, or kUnk.
  TokenId target_id(const Vocab& v, const std::string& tok) const {
    if (v.contains(tok)) return v.id(tok);
    auto it = std::find(oovs.begin(), oovs.end(), tok);
    if (it != oovs.end()) return static_cast<TokenId>(v.size() + static_cast<std::size_t>(it - oovs.begin()));
    return Vocab::kUnk;
  }

  const std::string& word(const Vocab& v, TokenId ext) const {
    if (static_cast<std::size_t>(ext) < v.size()) return v.token(ext);
    return oovs.at(static_cast<std::size_t>(ext) - v.size());
  }
};

inline SourceEncoding encode_source(const Vocab& v, std::span<const std::string> tokens) {
  SourceEncoding s;
  s.tokens.assign(tokens.begin(), tokens.end());
  for (const auto& t : tokens) {
    if (v.contains(t)) {
      const TokenId id = v.id(t);
      s.ids.push_back(id);
      s.ext_ids.push_back(id);
      continue;
    }
    s.ids.push_back(Vocab::kUnk);
    auto it = std::find(s.oovs.begin(), s.oovs.end(), t);
    if (it == s.oovs.end()) {
      s.oovs.push_back(t);
      it = s.oovs.end() - 1;
    }
    s.ext_ids.push_back(static_cast<TokenId>(v.size() + static_cast<std::size_t>(it - s.oovs.begin())));
  }
  return s;
}

}  // namespace repodesc::abstractsum
