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
#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repodesc/abstractsum/model.hpp"
#include "repodesc/abstractsum/vocab.hpp"
#include "repodesc/textcore.hpp"

namespace repodesc::abstractsum {

struct Model {
  Vocab vocab;
  ModelParameters params;
};

// Lowercased word tokens of a README after markdown stripping, cut to
// `max_len`.
inline std::vector<std::string> readme_tokens(std::string_view readme_markdown, std::size_t max_len) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(preprocess_markdown(readme_markdown))) {
    if (out.size() == max_len) break;
    out.push_back(t.normalized);
  }
  return out;
}

inline std::vector<std::string> description_tokens(std::string_view description) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(description)) out.push_back(t.normalized);
  return out;
}

inline SourceEncoding prepare_source(const Model& m, std::span<const std::string> tokens) {
  const std::size_t n = std::min(tokens.size(), m.params.config.max_source_len);
  return encode_source(m.vocab, tokens.first(n));
}

struct Decoded {
  std::vector<TokenId> ids;  // extended ids, EOS excluded
  std::vector<std::string> tokens;
  bool finished = false;  // EOS emitted before the length cap
  double logprob = 0.0;

  std::string text() const {
    std::string s;
    for (const auto& t : tokens) {
      if (!s.empty()) s.push_back(' ');
      s += t;
    }
    return s;
  }
};

namespace detail {

inline bool masked(TokenId id) { return id == Vocab::kPad || id == Vocab::kBos; }

inline void fill_tokens(const Model& m, const SourceEncoding& src, Decoded& d) {
  d.tokens.clear();
  for (TokenId id : d.ids) d.tokens.push_back(src.word(m.vocab, id));
}

inline std::size_t target_cap(const Model& m, std::optional<std::size_t> max_len) {
  return max_len.value_or(m.params.config.max_target_len);
}

}  // namespace detail

// Argmax decoding; ties go to the lower id.
inline Decoded greedy_decode(const Model& m, const SourceEncoding& src,
                             std::optional<std::size_t> max_len = std::nullopt) {
  const ModelParameters& p = m.params;
  const std::size_t extended = p.vocab_size + src.oovs.size();
  const EncoderState enc = encode(p, src.ids);
  VectorXd h = enc.s0, c = enc.c0;
  TokenId input = Vocab::kBos;
  Decoded out;
  const std::size_t cap = detail::target_cap(m, max_len);
  DecoderStep step;
  for (std::size_t t = 0; t < cap + 1; ++t) {
    decoder_step(p, enc, src.ext_ids, extended, input, h, c, step);
    const VectorXd& dist = step.dist.final_dist;
    TokenId best = -1;
    for (Eigen::Index k = 0; k < dist.size(); ++k) {
      if (detail::masked(static_cast<TokenId>(k))) continue;
      if (best < 0 || dist(k) > dist(best)) best = static_cast<TokenId>(k);
    }
    if (best == Vocab::kEos) {
      out.finished = true;
      out.logprob += std::log(dist(best) + kProbFloor);
      break;
    }
    if (t == cap) break;
    out.ids.push_back(best);
    out.logprob += std::log(dist(best) + kProbFloor);
    input = best;
    h = step.lstm.h;
    c = step.lstm.c;
  }
  detail::fill_tokens(m, src, out);
  return out;
}

// Beam search without length normalization. Candidates are ranked by
// cumulative log probability, then by lower last token id; beam width 1
// reproduces greedy decoding. At the length cap only EOS may extend a
// hypothesis.
inline Decoded beam_decode(const Model& m, const SourceEncoding& src, std::size_t width,
                           std::optional<std::size_t> max_len = std::nullopt) {
  if (width == 0) throw DataError("beam width must be positive");
  const ModelParameters& p = m.params;
  const std::size_t extended = p.vocab_size + src.oovs.size();
  const EncoderState enc = encode(p, src.ids);
  const std::size_t cap = detail::target_cap(m, max_len);

  struct Hyp {
    std::vector<TokenId> ids;
    double logprob = 0.0;
    VectorXd h, c;
  };
  struct Cand {
    std::size_t parent;
    TokenId token;
    double logprob;
  };
  auto better = [](const Cand& a, const Cand& b) {
    if (a.logprob != b.logprob) return a.logprob > b.logprob;
    if (a.token != b.token) return a.token < b.token;
    return a.parent < b.parent;
  };

  std::vector<Hyp> live{{{}, 0.0, enc.s0, enc.c0}};
  std::vector<Decoded> done;
  DecoderStep step;
  for (std::size_t t = 0; t < cap + 1 && !live.empty() && done.size() < width; ++t) {
    std::vector<Cand> cands;
    std::vector<std::pair<VectorXd, VectorXd>> states;
    for (std::size_t hi = 0; hi < live.size(); ++hi) {
      const Hyp& hyp = live[hi];
      const TokenId input = hyp.ids.empty() ? Vocab::kBos : hyp.ids.back();
      decoder_step(p, enc, src.ext_ids, extended, input, hyp.h, hyp.c, step);
      states.emplace_back(step.lstm.h, step.lstm.c);
      const VectorXd& dist = step.dist.final_dist;
      for (Eigen::Index k = 0; k < dist.size(); ++k) {
        const auto id = static_cast<TokenId>(k);
        if (detail::masked(id)) continue;
        if (t == cap && id != Vocab::kEos) continue;
        cands.push_back({hi, id, hyp.logprob + std::log(dist(k) + kProbFloor)});
      }
    }
    const std::size_t keep = std::min(width - done.size(), cands.size());
    std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep), cands.end(), better);
    std::vector<Hyp> next;
    for (std::size_t k = 0; k < keep; ++k) {
      const Cand& cd = cands[k];
      if (cd.token == Vocab::kEos) {
        Decoded d;
        d.ids = live[cd.parent].ids;
        d.finished = true;
        d.logprob = cd.logprob;
        done.push_back(std::move(d));
        continue;
      }
      Hyp h{live[cd.parent].ids, cd.logprob, states[cd.parent].first, states[cd.parent].second};
      h.ids.push_back(cd.token);
      next.push_back(std::move(h));
    }
    live = std::move(next);
  }
  Decoded best;
  bool have = false;
  for (auto& d : done) {
    if (!have || d.logprob > best.logprob) {
      best = d;
      have = true;
    }
  }
  detail::fill_tokens(m, src, best);
  return best;
}

// Ancestral sampling from the final distribution (PAD and BOS excluded).
template <class Rng>
Decoded sample_decode(const Model& m, const SourceEncoding& src, Rng& rng,
                      std::optional<std::size_t> max_len = std::nullopt) {
  const ModelParameters& p = m.params;
  const std::size_t extended = p.vocab_size + src.oovs.size();
  const EncoderState enc = encode(p, src.ids);
  const std::size_t cap = detail::target_cap(m, max_len);
  VectorXd h = enc.s0, c = enc.c0;
  TokenId input = Vocab::kBos;
  Decoded out;
  DecoderStep step;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t t = 0; t < cap; ++t) {
    decoder_step(p, enc, src.ext_ids, extended, input, h, c, step);
    const VectorXd& dist = step.dist.final_dist;
    double total = 0.0;
    for (Eigen::Index k = 0; k < dist.size(); ++k) {
      if (!detail::masked(static_cast<TokenId>(k))) total += dist(k);
    }
    const double u = unif(rng) * total;
    double acc = 0.0;
    TokenId pick = Vocab::kEos;
    for (Eigen::Index k = 0; k < dist.size(); ++k) {
      if (detail::masked(static_cast<TokenId>(k))) continue;
      acc += dist(k);
      pick = static_cast<TokenId>(k);
      if (u < acc) break;
    }
    out.logprob += std::log(dist(pick) + kProbFloor);
    if (pick == Vocab::kEos) {
      out.finished = true;
      break;
    }
    out.ids.push_back(pick);
    input = pick;
    h = step.lstm.h;
    c = step.lstm.c;
  }
  detail::fill_tokens(m, src, out);
  return out;
}

// Description for a README with greedy (beam_width <= 1) or beam decoding.
inline std::string describe(const Model& m, std::string_view readme_markdown, std::size_t beam_width = 1) {
  const auto toks = readme_tokens(readme_markdown, m.params.config.max_source_len);
  if (toks.empty()) throw EmptyDocument();
  const SourceEncoding src = prepare_source(m, toks);
  return beam_width <= 1 ? greedy_decode(m, src).text() : beam_decode(m, src, beam_width).text();
}

}  // namespace repodesc::abstractsum
