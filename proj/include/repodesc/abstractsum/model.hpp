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

// Pointer-generator encoder-decoder.
//
//   encoder   single-layer bidirectional LSTM over source embeddings
//   bridge    s0 = tanh(Wh [h_fw(n); h_bw(1)]), c0 = tanh(Wc [c_fw(n); c_bw(1)])
//   decoder   single-layer LSTM fed the previous target embedding; the
//             embedding table is shared with the encoder
//   attention e_i = v . tanh(We h_i + Wd s_t + b),  a = softmax(e)
//   output    P_vocab = softmax(Wo [s_t; ctx] + bo)
//   gate      p_gen = sigmoid(wc.ctx + ws.s_t + wx.x_t + bg)
//   final     P(w) = p_gen P_vocab(w) + (1 - p_gen) sum_{i: src_i = w} a_i
//
// Gradients are derived by hand; see loss_and_gradient().

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "repodesc/abstractsum/vocab.hpp"
#include "repodesc/error.hpp"

namespace repodesc::abstractsum {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ModelConfig {
  int embed_dim = 128;
  int hidden_dim = 256;
  int attn_dim = 0;  // 0: same as hidden_dim
  std::size_t max_source_len = 400;
  std::size_t max_target_len = 30;
  std::uint64_t seed = 1;
  double init_scale = 0.1;

  int attention_dim() const { return attn_dim > 0 ? attn_dim : hidden_dim; }

  void validate() const {
    if (embed_dim <= 0 || hidden_dim <= 0 || attn_dim < 0) throw DataError("model dimensions must be positive");
    if (max_source_len == 0 || max_target_len == 0) throw DataError("length limits must be positive");
  }
};

// Gate rows are ordered input, forget, output, candidate.
struct LstmWeights {
  MatrixXd w;  // 4H x (in + H)
  VectorXd b;  // 4H
};

struct ModelParameters {
  ModelConfig config;
  std::size_t vocab_size = 0;

  MatrixXd embedding;  // E x V, one column per token; shared by encoder and decoder
  LstmWeights enc_fw, enc_bw, dec;
  MatrixXd reduce_h_w, reduce_c_w;  // H x 2H
  VectorXd reduce_h_b, reduce_c_b;
  MatrixXd attn_enc;  // A x 2H
  MatrixXd attn_dec;  // A x H
  VectorXd attn_b, attn_v;
  VectorXd gen_ctx, gen_state, gen_input, gen_b;  // gen_b has one entry
  MatrixXd out_w;  // V x 3H
  VectorXd out_b;

  template <class F>
  void visit(F&& f) {
    f("embedding", embedding);
    f("enc_fw.w", enc_fw.w);
    f("enc_fw.b", enc_fw.b);
    f("enc_bw.w", enc_bw.w);
    f("enc_bw.b", enc_bw.b);
    f("dec.w", dec.w);
    f("dec.b", dec.b);
    f("reduce_h.w", reduce_h_w);
    f("reduce_h.b", reduce_h_b);
    f("reduce_c.w", reduce_c_w);
    f("reduce_c.b", reduce_c_b);
    f("attn.enc", attn_enc);
    f("attn.dec", attn_dec);
    f("attn.b", attn_b);
    f("attn.v", attn_v);
    f("gen.ctx", gen_ctx);
    f("gen.state", gen_state);
    f("gen.input", gen_input);
    f("gen.b", gen_b);
    f("out.w", out_w);
    f("out.b", out_b);
  }

  template <class F>
  void visit(F&& f) const {
    const_cast<ModelParameters*>(this)->visit([&](std::string_view name, auto& t) { f(name, std::as_const(t)); });
  }

  // All tensors shaped for (config, vocab_size) and filled with zeros.
  static ModelParameters zeros(const ModelConfig& config, std::size_t vocab_size) {
    config.validate();
    const Eigen::Index e = config.embed_dim, h = config.hidden_dim, a = config.attention_dim();
    const auto v = static_cast<Eigen::Index>(vocab_size);
    ModelParameters p;
    p.config = config;
    p.vocab_size = vocab_size;
    p.embedding = MatrixXd::Zero(e, v);
    for (LstmWeights* l : {&p.enc_fw, &p.enc_bw, &p.dec}) {
      l->w = MatrixXd::Zero(4 * h, e + h);
      l->b = VectorXd::Zero(4 * h);
    }
    p.reduce_h_w = MatrixXd::Zero(h, 2 * h);
    p.reduce_c_w = MatrixXd::Zero(h, 2 * h);
    p.reduce_h_b = VectorXd::Zero(h);
    p.reduce_c_b = VectorXd::Zero(h);
    p.attn_enc = MatrixXd::Zero(a, 2 * h);
    p.attn_dec = MatrixXd::Zero(a, h);
    p.attn_b = VectorXd::Zero(a);
    p.attn_v = VectorXd::Zero(a);
    p.gen_ctx = VectorXd::Zero(2 * h);
    p.gen_state = VectorXd::Zero(h);
    p.gen_input = VectorXd::Zero(e);
    p.gen_b = VectorXd::Zero(1);
    p.out_w = MatrixXd::Zero(v, 3 * h);
    p.out_b = VectorXd::Zero(v);
    return p;
  }

  static ModelParameters zeros_like(const ModelParameters& other) {
    return zeros(other.config, other.vocab_size);
  }

  // Uniform(-s, s) weights from the config seed, zero biases except a unit
  // forget-gate bias.
  static ModelParameters initialize(const ModelConfig& config, std::size_t vocab_size) {
    ModelParameters p = zeros(config, vocab_size);
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> dist(-config.init_scale, config.init_scale);
    p.visit([&](std::string_view name, auto& t) {
      if (name.ends_with(".b") && name != "attn.b") return;
      for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = dist(rng);
    });
    p.attn_b.setZero();
    const Eigen::Index h = config.hidden_dim;
    for (LstmWeights* l : {&p.enc_fw, &p.enc_bw, &p.dec}) l->b.segment(h, h).setOnes();
    return p;
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    visit([&](std::string_view, const auto& t) { n += static_cast<std::size_t>(t.size()); });
    return n;
  }

  bool all_finite() const {
    bool ok = true;
    visit([&](std::string_view, const auto& t) { ok = ok && t.allFinite(); });
    return ok;
  }
};

// Visits matching tensors of two parameter sets in lockstep.
template <class F>
void visit_pair(ModelParameters& a, const ModelParameters& b, F&& f) {
  std::vector<const void*> rhs;
  b.visit([&](std::string_view, const auto& t) { rhs.push_back(&t); });
  std::size_t k = 0;
  a.visit([&](std::string_view name, auto& t) {
    using T = std::remove_reference_t<decltype(t)>;
    f(name, t, *static_cast<const T*>(rhs[k++]));
  });
}

namespace detail {

inline VectorXd sigmoid(const VectorXd& z) { return (1.0 + (-z.array()).exp()).inverse().matrix(); }
inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

inline VectorXd softmax(const VectorXd& z) {
  VectorXd e = (z.array() - z.maxCoeff()).exp().matrix();
  return e / e.sum();
}

struct LstmCache {
  VectorXd in;  // [x; h_prev]
  VectorXd i, f, o, g, c_prev, c, tc, h;
};

inline void lstm_forward(const LstmWeights& w, const VectorXd& x, const VectorXd& h_prev, const VectorXd& c_prev,
                         LstmCache& k) {
  const Eigen::Index h = h_prev.size();
  k.in.resize(x.size() + h);
  k.in << x, h_prev;
  const VectorXd z = w.w * k.in + w.b;
  k.i = sigmoid(VectorXd(z.segment(0, h)));
  k.f = sigmoid(VectorXd(z.segment(h, h)));
  k.o = sigmoid(VectorXd(z.segment(2 * h, h)));
  k.g = z.segment(3 * h, h).array().tanh().matrix();
  k.c_prev = c_prev;
  k.c = k.f.cwiseProduct(c_prev) + k.i.cwiseProduct(k.g);
  k.tc = k.c.array().tanh().matrix();
  k.h = k.o.cwiseProduct(k.tc);
}

// Backpropagates dh/dc arriving at this step's outputs. Accumulates weight
// gradients into gw; returns d[x; h_prev] in d_in and dc_prev.
inline void lstm_backward(const LstmWeights& w, const LstmCache& k, const VectorXd& dh, const VectorXd& dc_out,
                          LstmWeights& gw, VectorXd& d_in, VectorXd& dc_prev) {
  const Eigen::Index h = dh.size();
  const VectorXd d_o = dh.cwiseProduct(k.tc);
  const VectorXd dc = dc_out + dh.cwiseProduct(k.o).cwiseProduct((1.0 - k.tc.array().square()).matrix());
  const VectorXd d_i = dc.cwiseProduct(k.g);
  const VectorXd d_g = dc.cwiseProduct(k.i);
  const VectorXd d_f = dc.cwiseProduct(k.c_prev);
  dc_prev = dc.cwiseProduct(k.f);
  VectorXd dz(4 * h);
  dz.segment(0, h) = (d_i.array() * k.i.array() * (1.0 - k.i.array())).matrix();
  dz.segment(h, h) = (d_f.array() * k.f.array() * (1.0 - k.f.array())).matrix();
  dz.segment(2 * h, h) = (d_o.array() * k.o.array() * (1.0 - k.o.array())).matrix();
  dz.segment(3 * h, h) = (d_g.array() * (1.0 - k.g.array().square())).matrix();
  gw.w.noalias() += dz * k.in.transpose();
  gw.b += dz;
  d_in.noalias() = w.w.transpose() * dz;
}

}  // namespace detail

struct EncoderState {
  MatrixXd states;  // 2H x n, column i = [h_fw(i); h_bw(i)]
  MatrixXd feat;    // A x n, attn_enc * states
  VectorXd s0, c0;
  // caches for backprop
  std::vector<detail::LstmCache> fw, bw;
  VectorXd bridge_h, bridge_c;
};

inline EncoderState encode(const ModelParameters& p, std::span<const TokenId> ids) {
  if (ids.empty()) throw EmptyInput("encoder input is empty");
  if (ids.size() > p.config.max_source_len) throw LengthExceeded(ids.size(), p.config.max_source_len);
  const Eigen::Index h = p.config.hidden_dim;
  const std::size_t n = ids.size();
  EncoderState enc;
  enc.fw.resize(n);
  enc.bw.resize(n);
  VectorXd hz = VectorXd::Zero(h), cz = VectorXd::Zero(h);
  for (std::size_t t = 0; t < n; ++t) {
    const VectorXd x = p.embedding.col(ids[t]);
    if (t == 0) {
      detail::lstm_forward(p.enc_fw, x, hz, cz, enc.fw[t]);
    } else {
      detail::lstm_forward(p.enc_fw, x, enc.fw[t - 1].h, enc.fw[t - 1].c, enc.fw[t]);
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t t = n - 1 - r;
    const VectorXd x = p.embedding.col(ids[t]);
    if (r == 0) {
      detail::lstm_forward(p.enc_bw, x, hz, cz, enc.bw[t]);
    } else {
      detail::lstm_forward(p.enc_bw, x, enc.bw[t + 1].h, enc.bw[t + 1].c, enc.bw[t]);
    }
  }
  enc.states.resize(2 * h, static_cast<Eigen::Index>(n));
  for (std::size_t t = 0; t < n; ++t) {
    enc.states.col(static_cast<Eigen::Index>(t)) << enc.fw[t].h, enc.bw[t].h;
  }
  enc.feat = p.attn_enc * enc.states;
  enc.bridge_h.resize(2 * h);
  enc.bridge_h << enc.fw[n - 1].h, enc.bw[0].h;
  enc.bridge_c.resize(2 * h);
  enc.bridge_c << enc.fw[n - 1].c, enc.bw[0].c;
  enc.s0 = (p.reduce_h_w * enc.bridge_h + p.reduce_h_b).array().tanh().matrix();
  enc.c0 = (p.reduce_c_w * enc.bridge_c + p.reduce_c_b).array().tanh().matrix();
  return enc;
}

struct StepDistribution {
  VectorXd final_dist;  // over vocab ids followed by source OOV ids
  VectorXd vocab_dist;
  VectorXd attention;
  double p_gen = 0.0;
};

struct DecoderStep {
  TokenId input = Vocab::kBos;
  detail::LstmCache lstm;
  VectorXd x;
  MatrixXd u;  // A x n, tanh of attention pre-activations
  VectorXd ctx;
  VectorXd state_ctx;  // [s; ctx]
  StepDistribution dist;
};

// One decoder step from (h_prev, c_prev) fed with `input` (a vocab id; OOV
// extended ids are fed as <unk>).
inline void decoder_step(const ModelParameters& p, const EncoderState& enc, std::span<const TokenId> src_ext,
                         std::size_t extended_size, TokenId input, const VectorXd& h_prev, const VectorXd& c_prev,
                         DecoderStep& k) {
  const auto v = static_cast<Eigen::Index>(p.vocab_size);
  const Eigen::Index h = p.config.hidden_dim;
  k.input = input < v ? input : Vocab::kUnk;
  k.x = p.embedding.col(k.input);
  detail::lstm_forward(p.dec, k.x, h_prev, c_prev, k.lstm);
  const VectorXd& s = k.lstm.h;

  const VectorXd dec_feat = p.attn_dec * s + p.attn_b;
  k.u = (enc.feat.colwise() + dec_feat).array().tanh().matrix();
  const VectorXd scores = k.u.transpose() * p.attn_v;
  k.dist.attention = detail::softmax(scores);
  k.ctx = enc.states * k.dist.attention;

  k.state_ctx.resize(3 * h);
  k.state_ctx << s, k.ctx;
  k.dist.vocab_dist = detail::softmax(p.out_w * k.state_ctx + p.out_b);
  k.dist.p_gen = detail::sigmoid(p.gen_ctx.dot(k.ctx) + p.gen_state.dot(s) + p.gen_input.dot(k.x) + p.gen_b(0));

  k.dist.final_dist = VectorXd::Zero(static_cast<Eigen::Index>(extended_size));
  k.dist.final_dist.head(v) = k.dist.p_gen * k.dist.vocab_dist;
  for (std::size_t i = 0; i < src_ext.size(); ++i) {
    k.dist.final_dist(src_ext[i]) += (1.0 - k.dist.p_gen) * k.dist.attention(static_cast<Eigen::Index>(i));
  }
}

// Added inside the log so an impossible target yields a large finite loss.
inline constexpr double kProbFloor = 1e-12;

struct ForwardResult {
  double nll = 0.0;
  std::vector<StepDistribution> steps;
};

// Teacher-forced negative log likelihood of `target` (extended ids, EOS
// included) given the source. When `grad` is non-null the gradient of the
// NLL is accumulated into it, scaled by `grad_scale`.
inline ForwardResult loss_and_gradient(const ModelParameters& p, const SourceEncoding& src,
                                       std::span<const TokenId> target, ModelParameters* grad = nullptr,
                                       double grad_scale = 1.0, bool keep_steps = false) {
  const std::size_t extended = p.vocab_size + src.oovs.size();
  const auto v = static_cast<Eigen::Index>(p.vocab_size);
  const Eigen::Index h = p.config.hidden_dim;
  const std::size_t n = src.ids.size();
  const std::size_t steps = target.size();

  EncoderState enc = encode(p, src.ids);
  std::vector<DecoderStep> dec(steps);
  ForwardResult result;
  for (std::size_t t = 0; t < steps; ++t) {
    const TokenId input = t == 0 ? Vocab::kBos : target[t - 1];
    const VectorXd& hp = t == 0 ? enc.s0 : dec[t - 1].lstm.h;
    const VectorXd& cp = t == 0 ? enc.c0 : dec[t - 1].lstm.c;
    decoder_step(p, enc, src.ext_ids, extended, input, hp, cp, dec[t]);
    result.nll -= std::log(dec[t].dist.final_dist(target[t]) + kProbFloor);
  }
  if (keep_steps) {
    for (auto& d : dec) result.steps.push_back(d.dist);
  }
  if (grad == nullptr) return result;

  ModelParameters& g = *grad;
  MatrixXd d_states = MatrixXd::Zero(2 * h, static_cast<Eigen::Index>(n));
  VectorXd dh_next = VectorXd::Zero(h), dc_next = VectorXd::Zero(h);
  VectorXd d_in, dc_prev;
  for (std::size_t r = 0; r < steps; ++r) {
    const std::size_t t = steps - 1 - r;
    const DecoderStep& k = dec[t];
    const TokenId y = target[t];
    const double pg = k.dist.p_gen;
    const double prob = k.dist.final_dist(y);
    const double d_prob = -grad_scale / (prob + kProbFloor);

    double copy_y = 0.0;
    VectorXd d_attn = VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (src.ext_ids[i] == y) {
        copy_y += k.dist.attention(static_cast<Eigen::Index>(i));
        d_attn(static_cast<Eigen::Index>(i)) = d_prob * (1.0 - pg);
      }
    }
    const double pv_y = y < v ? k.dist.vocab_dist(y) : 0.0;

    // generation gate
    const double dz_gen = d_prob * (pv_y - copy_y) * pg * (1.0 - pg);
    g.gen_ctx += dz_gen * k.ctx;
    g.gen_state += dz_gen * k.lstm.h;
    g.gen_input += dz_gen * k.x;
    g.gen_b(0) += dz_gen;
    VectorXd d_ctx = dz_gen * p.gen_ctx;
    VectorXd d_s = dz_gen * p.gen_state + dh_next;
    VectorXd d_x = dz_gen * p.gen_input;

    // vocabulary softmax
    if (y < v) {
      VectorXd d_logits = -(d_prob * pg * pv_y) * k.dist.vocab_dist;
      d_logits(y) += d_prob * pg * pv_y;
      g.out_w.noalias() += d_logits * k.state_ctx.transpose();
      g.out_b += d_logits;
      const VectorXd d_sc = p.out_w.transpose() * d_logits;
      d_s += d_sc.head(h);
      d_ctx += d_sc.tail(2 * h);
    }

    // context vector and attention
    d_attn.noalias() += enc.states.transpose() * d_ctx;
    d_states.noalias() += d_ctx * k.dist.attention.transpose();
    const VectorXd d_scores =
        k.dist.attention.cwiseProduct((d_attn.array() - k.dist.attention.dot(d_attn)).matrix());
    g.attn_v.noalias() += k.u * d_scores;
    const MatrixXd d_pre =
        ((p.attn_v * d_scores.transpose()).array() * (1.0 - k.u.array().square())).matrix();
    g.attn_enc.noalias() += d_pre * enc.states.transpose();
    d_states.noalias() += p.attn_enc.transpose() * d_pre;
    const VectorXd d_dec_feat = d_pre.rowwise().sum();
    g.attn_dec.noalias() += d_dec_feat * k.lstm.h.transpose();
    g.attn_b += d_dec_feat;
    d_s.noalias() += p.attn_dec.transpose() * d_dec_feat;

    // decoder LSTM
    detail::lstm_backward(p.dec, k.lstm, d_s, dc_next, g.dec, d_in, dc_prev);
    d_x += d_in.head(p.config.embed_dim);
    g.embedding.col(k.input) += d_x;
    dh_next = d_in.tail(h);
    dc_next = dc_prev;
  }

  // bridge
  const VectorXd d_pre_h = dh_next.cwiseProduct((1.0 - enc.s0.array().square()).matrix());
  const VectorXd d_pre_c = dc_next.cwiseProduct((1.0 - enc.c0.array().square()).matrix());
  g.reduce_h_w.noalias() += d_pre_h * enc.bridge_h.transpose();
  g.reduce_h_b += d_pre_h;
  g.reduce_c_w.noalias() += d_pre_c * enc.bridge_c.transpose();
  g.reduce_c_b += d_pre_c;
  const VectorXd d_bridge_h = p.reduce_h_w.transpose() * d_pre_h;
  const VectorXd d_bridge_c = p.reduce_c_w.transpose() * d_pre_c;

  // forward encoder, last step first
  VectorXd dh = VectorXd::Zero(h), dc = VectorXd::Zero(h);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t t = n - 1 - r;
    VectorXd dh_t = dh + d_states.col(static_cast<Eigen::Index>(t)).head(h);
    VectorXd dc_t = dc;
    if (t == n - 1) {
      dh_t += d_bridge_h.head(h);
      dc_t += d_bridge_c.head(h);
    }
    detail::lstm_backward(p.enc_fw, enc.fw[t], dh_t, dc_t, g.enc_fw, d_in, dc_prev);
    g.embedding.col(src.ids[t]) += d_in.head(p.config.embed_dim);
    dh = d_in.tail(h);
    dc = dc_prev;
  }
  // backward encoder ran from position n-1 down to 0, so unwind from 0 up
  dh.setZero();
  dc.setZero();
  for (std::size_t t = 0; t < n; ++t) {
    VectorXd dh_t = dh + d_states.col(static_cast<Eigen::Index>(t)).tail(h);
    VectorXd dc_t = dc;
    if (t == 0) {
      dh_t += d_bridge_h.tail(h);
      dc_t += d_bridge_c.tail(h);
    }
    detail::lstm_backward(p.enc_bw, enc.bw[t], dh_t, dc_t, g.enc_bw, d_in, dc_prev);
    g.embedding.col(src.ids[t]) += d_in.head(p.config.embed_dim);
    dh = d_in.tail(h);
    dc = dc_prev;
  }
  return result;
}

// Forward pass only, returning every step's distribution.
inline ForwardResult forward(const ModelParameters& p, const SourceEncoding& src, std::span<const TokenId> target) {
  return loss_and_gradient(p, src, target, nullptr, 1.0, true);
}

}  // namespace repodesc::abstractsum
