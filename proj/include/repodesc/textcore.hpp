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

// Text normalization shared by every other module: markdown stripping,
// tokenization, sentence splitting and a lexicon + suffix-rule POS tagger.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "repodesc/error.hpp"
#include "repodesc/resources.hpp"

namespace repodesc {

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Number of UTF-8 code points in s.
inline std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

struct Token {
  std::string surface;
  std::string normalized;

  Token() = default;
  explicit Token(std::string s) : surface(std::move(s)), normalized(to_lower(surface)) {}

  friend bool operator==(const Token& a, const Token& b) { return a.surface == b.surface; }
};

using PosTag = std::string;

struct TaggedToken {
  Token token;
  PosTag tag;
};

struct TaggedSentence {
  std::vector<TaggedToken> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  // 1-based position of the implicit end-of-sentence marker.
  std::size_t eos_index() const noexcept { return tokens.size() + 1; }
  // 1-based accessors, matching the indexing of the purpose pattern.
  const TaggedToken& at1(std::size_t i) const { return tokens.at(i - 1); }

  std::vector<Token> plain_tokens() const {
    std::vector<Token> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(t.token);
    return out;
  }
};

struct PlainDocument {
  std::string title;                          // concatenated heading text
  std::vector<TaggedSentence> sentences;      // body sentences, source order
  std::vector<std::string> sentence_text;     // verbatim text of each sentence
  std::vector<bool> paragraph_start;          // sentence opens a paragraph
  std::size_t char_length = 0;                // code points of the plain text

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
  }
};

// ---------------------------------------------------------------------------
// Markdown to plain text

namespace detail {

inline bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string collapse_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(' ');
      pending = false;
      out.push_back(c);
    }
  }
  return out;
}

inline std::size_t leading_spaces(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if (c == ' ') {
      ++n;
    } else if (c == '\t') {
      n += 4;
    } else {
      break;
    }
  }
  return n;
}

// Removes <!-- comments --> and the contents of <pre>, <script> and <style>
// elements, which may span lines.
inline std::string strip_html_blocks(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  std::size_t i = 0;
  auto starts_with_ci = [&](std::size_t pos, std::string_view what) {
    if (pos + what.size() > in.size()) return false;
    for (std::size_t k = 0; k < what.size(); ++k) {
      if (std::tolower(static_cast<unsigned char>(in[pos + k])) != what[k]) return false;
    }
    return true;
  };
  while (i < in.size()) {
    if (starts_with_ci(i, "<!--")) {
      std::size_t end = in.find("-->", i + 4);
      i = end == std::string_view::npos ? in.size() : end + 3;
      continue;
    }
    bool skipped = false;
    for (std::string_view tag : {"pre", "script", "style"}) {
      std::string open = "<" + std::string(tag);
      if (starts_with_ci(i, open) && i + open.size() < in.size() &&
          (in[i + open.size()] == '>' || std::isspace(static_cast<unsigned char>(in[i + open.size()])))) {
        std::string close = "</" + std::string(tag);
        std::size_t j = i + open.size();
        while (j < in.size() && !starts_with_ci(j, close)) ++j;
        if (j < in.size()) {
          std::size_t gt = in.find('>', j);
          j = gt == std::string_view::npos ? in.size() : gt + 1;
        }
        out.push_back('\n');
        i = j;
        skipped = true;
        break;
      }
    }
    if (skipped) continue;
    out.push_back(in[i++]);
  }
  return out;
}

inline std::size_t find_closing(std::string_view s, std::size_t open_pos, char open, char close) {
  int depth = 0;
  for (std::size_t i = open_pos; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == open) ++depth;
    if (s[i] == close && --depth == 0) return i;
  }
  return std::string_view::npos;
}

inline bool word_byte(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

inline std::string decode_entity(std::string_view name) {
  if (name == "amp") return "&";
  if (name == "lt") return "<";
  if (name == "gt") return ">";
  if (name == "quot") return "\"";
  if (name == "apos" || name == "#39") return "'";
  if (name == "nbsp") return " ";
  return {};
}

// Inline markdown: code spans, images, links, tags, emphasis, escapes and a
// handful of HTML entities.
inline std::string strip_inline(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\\' && i + 1 < s.size() && std::ispunct(static_cast<unsigned char>(s[i + 1]))) {
      out.push_back(s[i + 1]);
      i += 2;
      continue;
    }
    if (c == '`') {
      std::size_t run = 0;
      while (i + run < s.size() && s[i + run] == '`') ++run;
      const std::string fence(run, '`');
      std::size_t close = s.find(fence, i + run);
      while (close != std::string_view::npos && close + run < s.size() && s[close + run] == '`') {
        close = s.find(fence, close + run + 1);
      }
      if (close == std::string_view::npos) {
        i += run;  // unmatched marker
        continue;
      }
      std::string body(trim(s.substr(i + run, close - i - run)));
      body.erase(std::remove(body.begin(), body.end(), '`'), body.end());
      out += body;
      i = close + run;
      continue;
    }
    if (c == '!' && i + 1 < s.size() && s[i + 1] == '[') {
      std::size_t close = find_closing(s, i + 1, '[', ']');
      if (close != std::string_view::npos) {
        std::size_t next = close + 1;
        if (next < s.size() && (s[next] == '(' || s[next] == '[')) {
          std::size_t end = find_closing(s, next, s[next], s[next] == '(' ? ')' : ']');
          if (end != std::string_view::npos) {
            i = end + 1;
            continue;
          }
        }
      }
    }
    if (c == '[') {
      std::size_t close = find_closing(s, i, '[', ']');
      if (close != std::string_view::npos) {
        std::string anchor = strip_inline(s.substr(i + 1, close - i - 1));
        std::size_t next = close + 1;
        if (next < s.size() && (s[next] == '(' || s[next] == '[')) {
          std::size_t end = find_closing(s, next, s[next], s[next] == '(' ? ')' : ']');
          if (end != std::string_view::npos) {
            out += anchor;
            i = end + 1;
            continue;
          }
        }
        out.push_back('[');
        out += anchor;
        out.push_back(']');
        i = close + 1;
        continue;
      }
    }
    if (c == '<' && i + 1 < s.size() &&
        (std::isalpha(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '/' || s[i + 1] == '!')) {
      std::size_t end = s.find('>', i + 1);
      if (end != std::string_view::npos) {
        out.push_back(' ');
        i = end + 1;
        continue;
      }
    }
    if (c == '*' || (c == '~' && i + 1 < s.size() && s[i + 1] == '~')) {
      while (i < s.size() && s[i] == c) ++i;
      continue;
    }
    if (c == '_') {
      std::size_t run = 0;
      while (i + run < s.size() && s[i + run] == '_') ++run;
      const bool prev_word = i > 0 && word_byte(static_cast<unsigned char>(s[i - 1]));
      const bool next_word = i + run < s.size() && word_byte(static_cast<unsigned char>(s[i + run]));
      if (!(prev_word && next_word)) {
        i += run;
        continue;
      }
      out.append(run, '_');
      i += run;
      continue;
    }
    if (c == '&') {
      std::size_t semi = s.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 6) {
        std::string decoded = decode_entity(s.substr(i + 1, semi - i - 1));
        if (!decoded.empty()) {
          out += decoded;
          i = semi + 1;
          continue;
        }
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

struct MarkdownBlock {
  std::string text;
  bool heading = false;
};

inline bool is_fence(std::string_view line, char& fence_char, std::size_t& fence_len) {
  std::string_view t = line;
  std::size_t indent = 0;
  while (indent < t.size() && indent < 3 && t[indent] == ' ') ++indent;
  t.remove_prefix(indent);
  if (t.size() < 3 || (t[0] != '`' && t[0] != '~')) return false;
  std::size_t n = 0;
  while (n < t.size() && t[n] == t[0]) ++n;
  if (n < 3) return false;
  fence_char = t[0];
  fence_len = n;
  return true;
}

inline bool is_rule_line(std::string_view line, char& ch) {
  std::string_view t = trim(line);
  if (t.empty()) return false;
  ch = t[0];
  if (ch != '-' && ch != '=' && ch != '*' && ch != '_') return false;
  std::size_t count = 0;
  for (char c : t) {
    if (c == ch) {
      ++count;
    } else if (c != ' ') {
      return false;
    }
  }
  return ch == '=' ? count >= 1 : count >= 3 || (ch == '-' && count >= 1);
}

inline bool is_table_separator(std::string_view line) {
  std::string_view t = trim(line);
  if (t.empty() || t.find('-') == std::string_view::npos) return false;
  return std::all_of(t.begin(), t.end(), [](char c) { return c == '|' || c == '-' || c == ':' || c == ' '; }) &&
         t.find('|') != std::string_view::npos;
}

inline bool is_link_definition(std::string_view line) {
  std::string_view t = trim(line);
  if (t.size() < 4 || t[0] != '[') return false;
  std::size_t close = t.find("]:");
  return close != std::string_view::npos && close > 1;
}

// Strips a list marker ("- ", "* ", "+ ", "12. ", "3) "); returns true when
// one was present.
inline bool strip_list_marker(std::string_view& line) {
  std::string_view t = line;
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  if (t.size() >= 2 && (t[0] == '-' || t[0] == '*' || t[0] == '+') && t[1] == ' ') {
    line = t.substr(2);
    return true;
  }
  std::size_t d = 0;
  while (d < t.size() && d < 9 && std::isdigit(static_cast<unsigned char>(t[d]))) ++d;
  if (d > 0 && d + 1 < t.size() && (t[d] == '.' || t[d] == ')') && t[d + 1] == ' ') {
    line = t.substr(d + 2);
    return true;
  }
  return false;
}

// Single pass of block-level parsing. Each returned block is one paragraph
// of plain text (lines joined by a space) or one heading.
inline std::vector<MarkdownBlock> parse_blocks(std::string_view markdown) {
  std::string text;
  text.reserve(markdown.size());
  for (std::size_t i = 0; i < markdown.size(); ++i) {
    if (markdown[i] == '\r') {
      if (i + 1 < markdown.size() && markdown[i + 1] == '\n') continue;
      text.push_back('\n');
    } else {
      text.push_back(markdown[i]);
    }
  }
  text = strip_html_blocks(text);

  std::vector<std::string_view> lines;
  {
    std::string_view rest = text;
    while (!rest.empty()) {
      std::size_t nl = rest.find('\n');
      lines.push_back(rest.substr(0, nl));
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }

  std::vector<MarkdownBlock> blocks;
  std::vector<std::string> para;  // raw lines of the paragraph being built
  auto flush = [&](bool as_heading = false) {
    if (para.empty()) return;
    std::string joined;
    for (const auto& l : para) {
      if (!joined.empty()) joined.push_back(' ');
      joined += l;
    }
    para.clear();
    std::string plain = collapse_spaces(strip_inline(joined));
    if (!plain.empty()) blocks.push_back({std::move(plain), as_heading});
  };

  bool prev_blank = true;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string_view line = lines[li];
    char fc = 0;
    std::size_t flen = 0;
    if (is_fence(line, fc, flen)) {
      flush();
      ++li;
      for (; li < lines.size(); ++li) {
        char c2 = 0;
        std::size_t l2 = 0;
        if (is_fence(lines[li], c2, l2) && c2 == fc && l2 >= flen && is_blank(trim(lines[li]).substr(l2))) break;
      }
      prev_blank = true;
      continue;
    }
    if (is_blank(line)) {
      flush();
      prev_blank = true;
      continue;
    }
    if (prev_blank && leading_spaces(line) >= 4) {
      // indented code block: runs until a non-blank, non-indented line
      flush();
      while (li + 1 < lines.size() && (is_blank(lines[li + 1]) || leading_spaces(lines[li + 1]) >= 4)) ++li;
      prev_blank = true;
      continue;
    }
    prev_blank = false;

    // blockquote markers
    std::string_view body = line;
    while (true) {
      std::string_view t = trim(body);
      if (!t.empty() && t.front() == '>') {
        t.remove_prefix(1);
        body = t;
      } else {
        break;
      }
    }

    std::string_view t = trim(body);
    if (!t.empty() && t.front() == '#') {
      std::size_t hashes = 0;
      while (hashes < t.size() && t[hashes] == '#') ++hashes;
      if (hashes <= 6 && (hashes == t.size() || t[hashes] == ' ' || t[hashes] == '\t')) {
        flush();
        std::string_view h = trim(t.substr(hashes));
        while (!h.empty() && h.back() == '#') h.remove_suffix(1);
        para.emplace_back(trim(h));
        flush(true);
        continue;
      }
    }
    char rc = 0;
    if (is_rule_line(t, rc)) {
      if ((rc == '=' || rc == '-') && para.size() == 1) {
        flush(true);  // setext heading
      } else {
        flush();
      }
      continue;
    }
    if (is_table_separator(t) || is_link_definition(t)) {
      flush();
      continue;
    }
    if (strip_list_marker(t)) flush();
    if (t.find('|') != std::string_view::npos && (t.front() == '|' || t.back() == '|')) {
      // table row: each row is its own block, cells separated by spaces
      flush();
      std::string row(t);
      std::replace(row.begin(), row.end(), '|', ' ');
      para.push_back(std::move(row));
      flush();
      continue;
    }
    para.emplace_back(t);
  }
  flush();
  return blocks;
}

inline std::string join_blocks(const std::vector<MarkdownBlock>& blocks) {
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += "\n\n";
    out += b.text;
  }
  return out;
}

}  // namespace detail

// Converts README markdown into plain text: code blocks, HTML, images and
// badges are removed, links become their anchor text, heading markers are
// dropped. Paragraphs are separated by a blank line. Passes are repeated
// until the text is stable, so the result is a fixed point.
inline std::string preprocess_markdown(std::string_view readme_text) {
  std::string current = detail::join_blocks(detail::parse_blocks(readme_text));
  for (int pass = 0; pass < 16; ++pass) {
    std::string next = detail::join_blocks(detail::parse_blocks(current));
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

// Plain text of every heading, in source order.
inline std::vector<std::string> extract_headings(std::string_view readme_text) {
  std::vector<std::string> out;
  for (auto& b : detail::parse_blocks(readme_text)) {
    if (!b.heading) continue;
    std::string plain = preprocess_markdown(b.text);
    if (!plain.empty()) out.push_back(std::move(plain));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tokenization

using AbbreviationSet = std::unordered_set<std::string>;

namespace detail {

struct Span {
  std::size_t begin;
  std::size_t end;
};

inline bool is_connector(char c) {
  return c == '-' || c == '.' || c == '_' || c == '\'' || c == '/' || c == '&' || c == '@';
}

inline void split_contraction(std::string_view word, std::size_t offset, std::vector<Span>& out) {
  if (word.find('\'') != std::string_view::npos) {
    const std::string lower = to_lower(word);
    if (lower.size() > 3 && lower.ends_with("n't")) {
      out.push_back({offset, offset + word.size() - 3});
      out.push_back({offset + word.size() - 3, offset + word.size()});
      return;
    }
    for (std::string_view suffix : {"'s", "'re", "'ve", "'ll", "'d", "'m"}) {
      if (lower.size() > suffix.size() && lower.ends_with(suffix)) {
        out.push_back({offset, offset + word.size() - suffix.size()});
        out.push_back({offset + word.size() - suffix.size(), offset + word.size()});
        return;
      }
    }
  }
  out.push_back({offset, offset + word.size()});
}

inline std::vector<Span> token_spans(std::string_view text, const AbbreviationSet& abbreviations) {
  std::vector<Span> spans;
  const std::size_t n = text.size();
  auto at = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  std::size_t i = 0;
  while (i < n) {
    if (std::isspace(at(i))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    const bool dot_word = text[i] == '.' && i + 1 < n && std::isalpha(at(i + 1)) &&
                          (i == 0 || std::isspace(at(i - 1)));
    if (word_byte(at(i)) || dot_word) {
      if (dot_word) ++i;
      while (i < n) {
        if (word_byte(at(i))) {
          ++i;
        } else if (is_connector(text[i]) && i + 1 < n && word_byte(at(i + 1))) {
          i += 2;
        } else {
          break;
        }
      }
      // C++, C#, F#, Notepad++
      if (i + 1 < n && text[i] == '+' && text[i + 1] == '+' && (i + 2 == n || !word_byte(at(i + 2)))) {
        i += 2;
      } else if (i < n && text[i] == '#' && i - start == 1 && (i + 1 == n || !word_byte(at(i + 1)))) {
        ++i;
      }
      if (i < n && text[i] == '.' &&
          abbreviations.contains(to_lower(text.substr(start, i - start + 1)))) {
        ++i;
        spans.push_back({start, i});
        continue;
      }
      split_contraction(text.substr(start, i - start), start, spans);
      continue;
    }
    // punctuation: runs of . - ! ? form one token, everything else is single
    const char c = text[i];
    ++i;
    if (c == '.' || c == '-' || c == '!' || c == '?') {
      while (i < n && text[i] == c) ++i;
    }
    spans.push_back({start, i});
  }
  return spans;
}

inline bool is_terminal(std::string_view tok) {
  return !tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) { return c == '.' || c == '!' || c == '?'; });
}

inline bool is_closer(std::string_view tok) {
  return tok == ")" || tok == "]" || tok == "\"" || tok == "'" || is_terminal(tok);
}

}  // namespace detail

// Default abbreviation list loaded from the data directory on first use.
inline const AbbreviationSet& default_abbreviations() {
  static const AbbreviationSet set = [] {
    AbbreviationSet s;
    for (auto& line : read_data_lines(data_dir() / "abbreviations.txt")) s.insert(to_lower(line));
    return s;
  }();
  return set;
}

inline std::vector<Token> tokenize(std::string_view text, const AbbreviationSet& abbreviations) {
  std::vector<Token> out;
  for (auto span : detail::token_spans(text, abbreviations)) {
    out.emplace_back(std::string(text.substr(span.begin, span.end - span.begin)));
  }
  return out;
}

inline std::vector<Token> tokenize(std::string_view text) { return tokenize(text, default_abbreviations()); }

// Splits after terminal punctuation (plus any adjacent closing marks) when
// followed by whitespace, and at blank lines. Abbreviations never end a
// sentence because they are tokenized together with their period.
inline std::vector<std::string> split_sentences(std::string_view text, const AbbreviationSet& abbreviations) {
  std::vector<std::string> out;
  const auto spans = detail::token_spans(text, abbreviations);
  auto tok = [&](std::size_t k) { return text.substr(spans[k].begin, spans[k].end - spans[k].begin); };
  std::size_t first = 0;
  for (std::size_t k = 0; k < spans.size(); ++k) {
    bool boundary = k + 1 == spans.size();
    if (!boundary) {
      std::string_view gap = text.substr(spans[k].end, spans[k + 1].begin - spans[k].end);
      const bool separated = !gap.empty();
      const bool blank_line = std::count(gap.begin(), gap.end(), '\n') >= 2;
      if (blank_line) {
        boundary = true;
      } else if (separated && detail::is_terminal(tok(k))) {
        boundary = true;
      } else if (separated && detail::is_closer(tok(k))) {
        // a closer ends the sentence only if an adjacent terminal precedes it
        std::size_t j = k;
        while (j > first && detail::is_closer(tok(j)) && spans[j - 1].end == spans[j].begin) {
          if (detail::is_terminal(tok(j - 1))) {
            boundary = true;
            break;
          }
          --j;
        }
      }
    }
    if (boundary) {
      out.emplace_back(text.substr(spans[first].begin, spans[k].end - spans[first].begin));
      first = k + 1;
    }
  }
  return out;
}

inline std::vector<std::string> split_sentences(std::string_view text) {
  return split_sentences(text, default_abbreviations());
}

// ---------------------------------------------------------------------------
// POS tagging

// Lexicon entries map a lowercase word to its readings, most frequent first.
// File format: word<TAB>tag1,tag2
class TaggerLexicon {
 public:
  TaggerLexicon() = default;

  static TaggerLexicon load(const std::filesystem::path& path) {
    TaggerLexicon lex;
    for (const auto& line : read_data_lines(path)) {
      auto tab = line.find('\t');
      if (tab == std::string::npos) throw IoError("malformed lexicon line in " + path.string() + ": " + line);
      std::vector<PosTag> tags;
      std::stringstream ss(line.substr(tab + 1));
      std::string tag;
      while (std::getline(ss, tag, ',')) {
        if (!tag.empty()) tags.push_back(tag);
      }
      lex.add(line.substr(0, tab), std::move(tags));
    }
    return lex;
  }

  void add(const std::string& word, std::vector<PosTag> tags) { entries_[to_lower(word)] = std::move(tags); }

  const std::vector<PosTag>* find(const std::string& normalized) const {
    auto it = entries_.find(normalized);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<PosTag>> entries_;
};

inline const TaggerLexicon& default_tagger_lexicon() {
  static const TaggerLexicon lex = TaggerLexicon::load(data_dir() / "tagger_lexicon.tsv");
  return lex;
}

// The VERB set of the purpose pattern.
inline bool is_verb_tag(std::string_view tag) {
  return tag == "VB" || tag == "VBD" || tag == "VBG" || tag == "VBN" || tag == "VBP" || tag == "VBZ";
}

namespace detail {

inline PosTag punctuation_tag(std::string_view tok) {
  if (is_terminal(tok)) return ".";
  if (tok == ",") return ",";
  if (tok == ":" || tok == ";" || tok.starts_with("-")) return ":";
  if (tok == "(" || tok == "[" || tok == "{") return "-LRB-";
  if (tok == ")" || tok == "]" || tok == "}") return "-RRB-";
  if (tok == "\"" || tok == "'") return "''";
  if (tok == "$") return "$";
  if (tok == "#") return "#";
  return "SYM";
}

inline bool has_tag(const std::vector<PosTag>& tags, std::string_view t) {
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}

inline bool is_numeric(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '.' && c != ',' && c != '-' && c != '/' && c != ':') {
      return false;
    }
  }
  return digit;
}

// Suffix heuristics for lowercase unknown words; returns "" when nothing fires.
inline PosTag suffix_tag(std::string_view w, std::string_view prev) {
  auto ends = [&](std::string_view suf, std::size_t min_len) { return w.size() >= min_len && w.ends_with(suf); };
  if (ends("ing", 5)) return "VBG";
  if (ends("ed", 4)) {
    static const std::unordered_set<std::string_view> aux = {"is", "are", "was", "were", "be", "been",
                                                              "being", "has", "have", "had", "get", "gets"};
    return aux.contains(prev) ? "VBN" : "VBD";
  }
  if (ends("ly", 4)) return "RB";
  for (std::string_view suf : {"tion", "sion", "ment", "ness", "ity", "ism", "ist", "er", "or", "ure", "ance", "ence"}) {
    if (ends(suf, suf.size() + 2)) return "NN";
  }
  for (std::string_view suf : {"able", "ible", "ful", "ous", "ive", "al", "ic", "less", "ish"}) {
    if (ends(suf, suf.size() + 2)) return "JJ";
  }
  if (ends("s", 4) && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is")) return "NNS";
  return {};
}

// Capitalized open-class words in mid-sentence are read as proper nouns
// ("for Go", "with React").
inline bool is_open_class(std::string_view tag) {
  return tag.starts_with("NN") || tag.starts_with("VB") || tag.starts_with("JJ") || tag.starts_with("RB");
}

inline bool has_inner_upper(std::string_view s) {
  return std::any_of(s.begin() + (s.empty() ? 0 : 1), s.end(),
                     [](unsigned char c) { return std::isupper(c) != 0; });
}

}  // namespace detail

// Tags one sentence. Deterministic: each token's tag depends only on the
// token, the lexicon and the previous token/tag.
inline TaggedSentence pos_tag(std::span<const Token> tokens, const TaggerLexicon& lexicon) {
  if (tokens.empty()) throw EmptyInput("pos_tag: empty token list");
  TaggedSentence out;
  out.tokens.reserve(tokens.size());
  std::string prev;
  PosTag prev_tag;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const Token& tok = tokens[k];
    const std::string& w = tok.normalized;
    const std::string& surface = tok.surface;
    PosTag tag;
    const unsigned char first = static_cast<unsigned char>(surface.front());
    const bool wordlike = detail::word_byte(first) || (surface.size() > 1 && surface[0] == '.');

    if (!wordlike) {
      tag = detail::punctuation_tag(surface);
    } else if (detail::is_numeric(surface)) {
      tag = "CD";
    } else if (const auto* readings = lexicon.find(w);
               readings != nullptr && !readings->empty() &&
               !(k > 0 && std::isupper(first) && detail::is_open_class(readings->front()))) {
      tag = readings->front();
      if (prev == "to" && detail::has_tag(*readings, "VB")) {
        tag = "VB";
      } else if (prev == "for" && detail::has_tag(*readings, "VBG")) {
        tag = "VBG";
      } else if ((prev_tag == "MD" || prev == "n't") && detail::has_tag(*readings, "VB")) {
        tag = "VB";
      } else if ((prev_tag == "DT" || prev_tag == "PRP$") && !detail::has_tag({tag}, "NN")) {
        for (std::string_view pref : {"NN", "NNS", "JJ"}) {
          if (detail::has_tag(*readings, pref)) {
            tag = PosTag(pref);
            break;
          }
        }
      } else if (prev_tag == "PRP" && detail::has_tag(*readings, "VBP")) {
        tag = "VBP";
      }
    } else {
      const bool capitalized = std::isupper(first) != 0;
      const bool has_digit = std::any_of(surface.begin(), surface.end(),
                                         [](unsigned char c) { return std::isdigit(c) != 0; });
      const bool code_like = detail::has_inner_upper(surface) || surface.find('.') != std::string::npos ||
                             surface.find('_') != std::string::npos || surface[0] == '.';
      if (has_digit || code_like) {
        tag = "NNP";
      } else if (capitalized) {
        tag = "NNP";
        if (k == 0) {
          PosTag s = detail::suffix_tag(w, prev);
          if (!s.empty()) tag = s;
        }
      } else if (w.find('-') != std::string::npos) {
        tag = "JJ";
      } else {
        tag = detail::suffix_tag(w, prev);
        if (tag.empty()) tag = prev == "to" ? "VB" : "NN";
      }
    }
    out.tokens.push_back({tok, tag});
    prev = w;
    prev_tag = tag;
  }
  return out;
}

inline TaggedSentence pos_tag(std::span<const Token> tokens) { return pos_tag(tokens, default_tagger_lexicon()); }

struct TextResources {
  const TaggerLexicon* lexicon = nullptr;
  const AbbreviationSet* abbreviations = nullptr;

  static TextResources defaults() { return {&default_tagger_lexicon(), &default_abbreviations()}; }
};

// Tokenizes and tags every sentence of a plain-text string.
inline std::vector<TaggedSentence> tag_text(std::string_view text, const TextResources& res = TextResources::defaults()) {
  std::vector<TaggedSentence> out;
  for (const auto& s : split_sentences(text, *res.abbreviations)) {
    auto toks = tokenize(s, *res.abbreviations);
    if (!toks.empty()) out.push_back(pos_tag(toks, *res.lexicon));
  }
  return out;
}

// Builds the summarizer input from README markdown. Heading text goes to
// the title; body paragraphs are split into tagged sentences.
inline PlainDocument make_document(std::string_view readme_markdown,
                                   const TextResources& res = TextResources::defaults()) {
  PlainDocument doc;
  doc.char_length = utf8_length(preprocess_markdown(readme_markdown));
  for (const auto& block : detail::parse_blocks(readme_markdown)) {
    std::string plain = preprocess_markdown(block.text);
    if (plain.empty()) continue;
    if (block.heading) {
      if (!doc.title.empty()) doc.title.push_back(' ');
      doc.title += plain;
      continue;
    }
    bool first = true;
    for (auto& sentence : split_sentences(plain, *res.abbreviations)) {
      auto toks = tokenize(sentence, *res.abbreviations);
      if (toks.empty()) continue;
      doc.sentences.push_back(pos_tag(toks, *res.lexicon));
      doc.sentence_text.push_back(std::move(sentence));
      doc.paragraph_start.push_back(first);
      first = false;
    }
  }
  return doc;
}

// Document from already-plain text: paragraphs split at blank lines, no title.
inline PlainDocument make_plain_document(std::string_view text, std::string title = {},
                                         const TextResources& res = TextResources::defaults()) {
  PlainDocument doc;
  doc.title = std::move(title);
  doc.char_length = utf8_length(text);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find("\n\n", pos);
    std::string_view para = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    bool first = true;
    for (auto& sentence : split_sentences(para, *res.abbreviations)) {
      auto toks = tokenize(sentence, *res.abbreviations);
      if (toks.empty()) continue;
      doc.sentences.push_back(pos_tag(toks, *res.lexicon));
      doc.sentence_text.push_back(std::move(sentence));
      doc.paragraph_start.push_back(first);
      first = false;
    }
    if (end == std::string_view::npos) break;
    pos = end + 2;
  }
  return doc;
}

}  // namespace repodesc
