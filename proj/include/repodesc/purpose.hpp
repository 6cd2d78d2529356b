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

// Purpose matching: a description states its purpose when some word w_i
// (1 < i < eos) is "for"/"to", the next word carries a verb tag, and at
// least min_length positions separate w_i from the end-of-sentence marker.

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "repodesc/textcore.hpp"

namespace repodesc {

struct PatternConfig {
  std::size_t min_length = 2;
  std::set<std::string> ptokens = {"for", "to"};
  std::set<PosTag> verb_tags = {"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"};
};

struct PurposeMatch {
  std::size_t ptoken_index = 0;  // 1-based
  Token verb;
  std::size_t span_begin = 0;    // 1-based, inclusive (the ptoken)
  std::size_t span_end = 0;      // 1-based, inclusive (last token before EOS)

  // Surface text of the span, tokens joined by single spaces.
  std::string span_text(const TaggedSentence& s) const {
    std::string out;
    for (std::size_t i = span_begin; i <= span_end; ++i) {
      if (!out.empty()) out.push_back(' ');
      out += s.at1(i).token.surface;
    }
    return out;
  }
};

// Leftmost position satisfying all conjuncts, or nothing.
inline std::optional<PurposeMatch> match_purpose(const TaggedSentence& sentence,
                                                 const PatternConfig& config = {}) {
  const std::size_t eos = sentence.eos_index();
  for (std::size_t i = 2; i < eos; ++i) {
    if (!config.ptokens.contains(sentence.at1(i).token.normalized)) continue;
    if (i + 1 >= eos) continue;  // w_{i+1} would be <EOS>, which has no tag
    if (!config.verb_tags.contains(sentence.at1(i + 1).tag)) continue;
    if (eos - i < config.min_length) continue;
    return PurposeMatch{i, sentence.at1(i + 1).token, i, sentence.size()};
  }
  return std::nullopt;
}

struct DescriptionPurpose {
  bool matched = false;
  std::size_t sentence_index = 0;
  TaggedSentence sentence;
  PurposeMatch match;
};

// Applies the pattern to every sentence; the first matching sentence wins.
inline DescriptionPurpose find_purpose(std::string_view description, const PatternConfig& config = {},
                                       const TextResources& res = TextResources::defaults()) {
  DescriptionPurpose out;
  auto sentences = tag_text(description, res);
  for (std::size_t k = 0; k < sentences.size(); ++k) {
    if (auto m = match_purpose(sentences[k], config)) {
      out.matched = true;
      out.sentence_index = k;
      out.sentence = std::move(sentences[k]);
      out.match = std::move(*m);
      return out;
    }
  }
  return out;
}

inline bool description_has_purpose(std::string_view description, const PatternConfig& config = {},
                                    const TextResources& res = TextResources::defaults()) {
  return find_purpose(description, config, res).matched;
}

}  // namespace repodesc
