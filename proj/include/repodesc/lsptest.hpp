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

// Heuristic rater for the Language / Software technology / Purpose (LSP)
// rubric, plus corpus-level statistics over ratings.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "repodesc/error.hpp"
#include "repodesc/purpose.hpp"
#include "repodesc/resources.hpp"
#include "repodesc/textcore.hpp"

namespace repodesc {

enum class LspCategory { Language = 0, SoftwareTech = 1, Purpose = 2 };

inline constexpr std::array<LspCategory, 3> kLspCategories = {LspCategory::Language, LspCategory::SoftwareTech,
                                                              LspCategory::Purpose};

inline std::string_view category_name(LspCategory c) {
  switch (c) {
    case LspCategory::Language:
      return "language";
    case LspCategory::SoftwareTech:
      return "software_tech";
    case LspCategory::Purpose:
      return "purpose";
  }
  return "?";
}

struct LspRating {
  bool language = false;
  bool software_tech = false;
  bool purpose = false;
  std::map<LspCategory, std::vector<std::string>> evidence;

  bool get(LspCategory c) const {
    switch (c) {
      case LspCategory::Language:
        return language;
      case LspCategory::SoftwareTech:
        return software_tech;
      case LspCategory::Purpose:
        return purpose;
    }
    return false;
  }
  bool all_three() const { return language && software_tech && purpose; }
};

class Lexicons {
 public:
  struct Entry {
    std::string name;
    std::vector<std::string> words;  // surface tokens of the name
    bool exact_case = false;
    bool lang = false;
    bool st = false;
    bool dual = false;
  };

  static Lexicons load(const std::filesystem::path& path) {
    Lexicons lex;
    for (const auto& line : read_data_lines(path)) {
      auto tab = line.find('\t');
      if (tab == std::string::npos) throw IoError("malformed lexicon line: " + line);
      std::unordered_set<std::string> flags;
      std::stringstream ss(line.substr(tab + 1));
      std::string f;
      while (std::getline(ss, f, ',')) flags.insert(f);
      lex.add(line.substr(0, tab), flags.contains("lang"), flags.contains("st"), flags.contains("dual"),
              flags.contains("funcnoun"));
    }
    return lex;
  }

  void add(const std::string& name, bool lang, bool st, bool dual, bool funcnoun) {
    if (funcnoun) functional_nouns_.insert(to_lower(name));
    if (!lang && !st && !dual) return;
    Entry e;
    e.name = name;
    for (auto& t : tokenize(name)) e.words.push_back(t.surface);
    if (e.words.empty()) return;
    e.exact_case = name.size() <= 2;
    e.lang = lang;
    e.st = st || dual;
    e.dual = dual;
    by_first_[to_lower(e.words.front())].push_back(entries_.size());
    entries_.push_back(std::move(e));
  }

  bool is_functional_noun(const std::string& normalized) const { return functional_nouns_.contains(normalized); }

  // Longest entry matching the tokens starting at pos, or nullptr.
  const Entry* match_at(std::span<const Token> tokens, std::size_t pos) const {
    auto it = by_first_.find(tokens[pos].normalized);
    if (it == by_first_.end()) return nullptr;
    const Entry* best = nullptr;
    for (std::size_t idx : it->second) {
      const Entry& e = entries_[idx];
      if (pos + e.words.size() > tokens.size()) continue;
      if (best != nullptr && e.words.size() <= best->words.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < e.words.size() && ok; ++k) {
        const Token& t = tokens[pos + k];
        ok = e.exact_case ? t.surface == e.words[k] : t.normalized == to_lower(e.words[k]);
      }
      if (ok) best = &e;
    }
    return best;
  }

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_;
  std::unordered_set<std::string> functional_nouns_;
};

inline const Lexicons& default_lexicons() {
  static const Lexicons lex = Lexicons::load(data_dir() / "lsp_lexicon.tsv");
  return lex;
}

namespace detail {

inline std::string join_surface(const TaggedSentence& s, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += s.tokens[i].token.surface;
  }
  return out;
}

inline bool noun_phrase_start(std::string_view tag) {
  return tag.starts_with("NN") || tag.starts_with("JJ") || tag == "DT" || tag == "PRP$" || tag == "CD";
}

// R2: a functional noun later followed, in the same sentence, by "for" and a
// noun phrase ("game server for Minecraft").
inline bool functional_noun_for(const TaggedSentence& s, const Lexicons& lex, std::string& evidence) {
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (!lex.is_functional_noun(s.tokens[j].token.normalized)) continue;
    for (std::size_t k = j + 1; k + 1 < s.size(); ++k) {
      if (s.tokens[k].token.normalized == "for" && noun_phrase_start(s.tokens[k + 1].tag)) {
        evidence = join_surface(s, j, s.size());
        return true;
      }
    }
  }
  return false;
}

// R3: a functional noun directly modified by a participle or relative clause
// ("client library written in pure Swift").
inline bool functional_noun_modified(const TaggedSentence& s, const Lexicons& lex, std::string& evidence) {
  static const std::unordered_set<std::string> markers = {"that", "which", "who", "written", "implementing",
                                                          "built", "based", "designed", "made", "providing"};
  for (std::size_t j = 0; j + 1 < s.size(); ++j) {
    if (!lex.is_functional_noun(s.tokens[j].token.normalized)) continue;
    const auto& next = s.tokens[j + 1];
    if (markers.contains(next.token.normalized) || next.tag == "VBN" || next.tag == "VBG") {
      evidence = join_surface(s, j, s.size());
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Rates one description. Language: a language entry (or the declared
// language) occurring as its own token sequence, or a dual-role ST. Names
// nested inside a longer ST name ("Ruby on Rails") do not count. Purpose:
// the purpose pattern, or one of the functional-noun rules above.
inline LspRating rate_description(std::string_view description, std::string_view declared_language,
                                  const Lexicons& lex, const PatternConfig& config = {},
                                  const TextResources& res = TextResources::defaults()) {
  if (detail::trim(description).empty()) throw EmptyDescription();
  LspRating r;
  const auto sentences = tag_text(description, res);
  std::vector<Token> declared;
  if (!declared_language.empty()) declared = tokenize(declared_language, *res.abbreviations);
  const bool declared_exact = declared_language.size() <= 2;

  for (const auto& s : sentences) {
    const auto toks = s.plain_tokens();
    std::size_t pos = 0;
    while (pos < toks.size()) {
      if (const auto* e = lex.match_at(toks, pos)) {
        const std::string text = detail::join_surface(s, pos, pos + e->words.size());
        if (e->lang || e->dual) {
          r.language = true;
          r.evidence[LspCategory::Language].push_back(text);
        }
        if (e->st) {
          r.software_tech = true;
          r.evidence[LspCategory::SoftwareTech].push_back(text);
        }
        pos += e->words.size();
        continue;
      }
      if (!declared.empty() && pos + declared.size() <= toks.size()) {
        bool ok = true;
        for (std::size_t k = 0; k < declared.size() && ok; ++k) {
          ok = declared_exact ? toks[pos + k].surface == declared[k].surface
                              : toks[pos + k].normalized == declared[k].normalized;
        }
        if (ok) {
          r.language = true;
          r.evidence[LspCategory::Language].push_back(detail::join_surface(s, pos, pos + declared.size()));
          pos += declared.size();
          continue;
        }
      }
      ++pos;
    }

    if (!r.purpose) {
      std::string ev;
      if (auto m = match_purpose(s, config)) {
        r.purpose = true;
        r.evidence[LspCategory::Purpose].push_back(m->span_text(s));
      } else if (detail::functional_noun_for(s, lex, ev) || detail::functional_noun_modified(s, lex, ev)) {
        r.purpose = true;
        r.evidence[LspCategory::Purpose].push_back(ev);
      }
    }
  }
  return r;
}

struct LspStats {
  std::size_t total = 0;
  std::array<std::size_t, 3> counts{};  // indexed by LspCategory
  std::size_t all_three = 0;

  std::size_t count(LspCategory c) const { return counts[static_cast<std::size_t>(c)]; }
  double percent(LspCategory c) const { return 100.0 * static_cast<double>(count(c)) / static_cast<double>(total); }
  double all_three_percent() const { return 100.0 * static_cast<double>(all_three) / static_cast<double>(total); }
};

inline LspStats corpus_lsp_stats(std::span<const LspRating> ratings) {
  if (ratings.empty()) throw EmptyInput("corpus_lsp_stats: no ratings");
  LspStats st;
  st.total = ratings.size();
  for (const auto& r : ratings) {
    for (auto c : kLspCategories) {
      if (r.get(c)) ++st.counts[static_cast<std::size_t>(c)];
    }
    if (r.all_three()) ++st.all_three;
  }
  return st;
}

}  // namespace repodesc
