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

// Maximum-likelihood and self-critical training with plain SGD.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "repodesc/abstractsum/decode.hpp"
#include "repodesc/abstractsum/model.hpp"
#include "repodesc/abstractsum/vocab.hpp"
#include "repodesc/rouge.hpp"

namespace repodesc::abstractsum {

struct TrainConfig {
  double learning_rate = 0.5;
  double scst_learning_rate = 0.02;
  double clip_norm = 2.0;
  std::size_t batch_size = 1;
  std::size_t ml_steps = 2000;
  std::size_t scst_epochs = 5;
  // Weight of the teacher-forced loss mixed into the self-critical loss.
  double ml_mix = 0.0;
  std::uint64_t seed = 1;
  // Stop ML training early once every example's loss is below this (0: off).
  double target_loss = 0.0;
};

struct Example {
  SourceEncoding source;
  std::vector<TokenId> target;  // extended ids followed by EOS
  std::vector<std::string> reference;
};

inline Example make_example(const Model& m, std::span<const std::string> source_tokens,
                            std::span<const std::string> description_tokens) {
  Example e;
  e.source = prepare_source(m, source_tokens);
  const std::size_t n = std::min(description_tokens.size(), m.params.config.max_target_len);
  for (std::size_t i = 0; i < n; ++i) {
    e.reference.push_back(description_tokens[i]);
    e.target.push_back(e.source.target_id(m.vocab, description_tokens[i]));
  }
  e.target.push_back(Vocab::kEos);
  return e;
}

struct LossPoint {
  std::size_t step = 0;
  std::string phase;
  double loss = 0.0;
  double reward = 0.0;
};

using ProgressFn = std::function<void(const LossPoint&)>;

inline double gradient_norm(const ModelParameters& g) {
  double sq = 0.0;
  g.visit([&](std::string_view, const auto& t) { sq += t.squaredNorm(); });
  return std::sqrt(sq);
}

// p -= lr * g, with g rescaled so its global L2 norm is at most `clip`.
inline void sgd_update(ModelParameters& p, const ModelParameters& g, double lr, double clip) {
  const double norm = gradient_norm(g);
  const double scale = clip > 0.0 && norm > clip ? clip / norm : 1.0;
  visit_pair(p, g, [&](std::string_view, auto& w, const auto& dw) { w -= (lr * scale) * dw; });
}

inline void zero(ModelParameters& g) {
  g.visit([](std::string_view, auto& t) { t.setZero(); });
}

namespace detail {

inline void check_finite(double loss, std::size_t step, std::string_view phase) {
  if (!std::isfinite(loss)) {
    throw NonfiniteLoss(std::string(phase) + " loss became non-finite at step " + std::to_string(step));
  }
}

// Seeded epoch-wise permutation of example indices.
class BatchOrder {
 public:
  BatchOrder(std::size_t n, std::uint64_t seed) : order_(n), rng_(seed) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    reshuffle();
  }
  std::size_t next() {
    if (pos_ == order_.size()) reshuffle();
    return order_[pos_++];
  }

 private:
  void reshuffle() {
    for (std::size_t i = order_.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(order_[i - 1], order_[pick(rng_)]);
    }
    pos_ = 0;
  }
  std::vector<std::size_t> order_;
  std::mt19937_64 rng_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Teacher-forced NLL minimization. One step is one SGD update over
// `batch_size` examples (loss averaged over the batch).
inline std::vector<LossPoint> train_ml(Model& m, std::span<const Example> data, const TrainConfig& cfg,
                                       const ProgressFn& progress = {}) {
  if (data.empty()) throw EmptyCorpus();
  const std::size_t batch = std::max<std::size_t>(1, cfg.batch_size);
  std::vector<LossPoint> curve;
  detail::BatchOrder order(data.size(), cfg.seed);
  ModelParameters grad = ModelParameters::zeros_like(m.params);
  std::vector<double> last_loss(data.size(), std::numeric_limits<double>::infinity());
  for (std::size_t step = 1; step <= cfg.ml_steps; ++step) {
    zero(grad);
    double loss = 0.0;
    for (std::size_t b = 0; b < batch; ++b) {
      const std::size_t idx = order.next();
      const Example& ex = data[idx];
      const double l = loss_and_gradient(m.params, ex.source, ex.target, &grad, 1.0 / batch).nll;
      last_loss[idx] = l;
      loss += l / batch;
    }
    detail::check_finite(loss, step, "ml");
    sgd_update(m.params, grad, cfg.learning_rate, cfg.clip_norm);
    curve.push_back({step, "ml", loss, 0.0});
    if (progress) progress(curve.back());
    if (cfg.target_loss > 0.0 &&
        std::all_of(last_loss.begin(), last_loss.end(), [&](double l) { return l < cfg.target_loss; })) {
      break;
    }
  }
  return curve;
}

inline double sequence_reward(std::span<const std::string> candidate, std::span<const std::string> reference) {
  return rouge_l(candidate, reference).f1;
}

// Self-critical loss for one example: (r(sample) - r(greedy)) * NLL(sample),
// optionally mixed with the teacher-forced NLL. Returns (loss, sample reward).
template <class Rng>
std::pair<double, double> scst_loss_and_gradient(const Model& m, const Example& ex, Rng& rng, double ml_mix,
                                                 ModelParameters* grad, double grad_scale = 1.0) {
  const Decoded greedy = greedy_decode(m, ex.source);
  const Decoded sample = sample_decode(m, ex.source, rng);
  const double r_greedy = sequence_reward(greedy.tokens, ex.reference);
  const double r_sample = sequence_reward(sample.tokens, ex.reference);
  const double advantage = r_sample - r_greedy;
  std::vector<TokenId> seq = sample.ids;
  if (sample.finished) seq.push_back(Vocab::kEos);
  double loss = 0.0;
  if (!seq.empty() && advantage != 0.0 && ml_mix < 1.0) {
    const double w = (1.0 - ml_mix) * advantage;
    loss += w * loss_and_gradient(m.params, ex.source, seq, grad, w * grad_scale).nll;
  }
  if (ml_mix > 0.0) {
    loss += ml_mix * loss_and_gradient(m.params, ex.source, ex.target, grad, ml_mix * grad_scale).nll;
  }
  return {loss, r_sample};
}

// Self-critical training from a warm-started model; `epochs` passes over the
// data, one SGD step per batch.
inline std::vector<LossPoint> train_scst(Model& m, std::span<const Example> data, const TrainConfig& cfg,
                                         std::size_t first_step = 1, const ProgressFn& progress = {}) {
  if (data.empty()) throw EmptyCorpus();
  const std::size_t batch = std::max<std::size_t>(1, cfg.batch_size);
  std::vector<LossPoint> curve;
  detail::BatchOrder order(data.size(), cfg.seed ^ 0x5c57ULL);
  std::mt19937_64 rng(cfg.seed);
  ModelParameters grad = ModelParameters::zeros_like(m.params);
  const std::size_t steps_per_epoch = (data.size() + batch - 1) / batch;
  std::size_t step = first_step;
  for (std::size_t epoch = 0; epoch < cfg.scst_epochs; ++epoch) {
    for (std::size_t s = 0; s < steps_per_epoch; ++s, ++step) {
      zero(grad);
      double loss = 0.0, reward = 0.0;
      for (std::size_t b = 0; b < batch; ++b) {
        const auto [l, r] = scst_loss_and_gradient(m, data[order.next()], rng, cfg.ml_mix, &grad, 1.0 / batch);
        loss += l / batch;
        reward += r / batch;
      }
      detail::check_finite(loss, step, "scst");
      sgd_update(m.params, grad, cfg.scst_learning_rate, cfg.clip_norm);
      curve.push_back({step, "scst", loss, reward});
      if (progress) progress(curve.back());
    }
  }
  return curve;
}

// Mean ROUGE-L F1 of greedy decodes against the references.
inline double mean_greedy_rouge_l(const Model& m, std::span<const Example> data) {
  if (data.empty()) throw EmptyCorpus();
  double total = 0.0;
  for (const auto& ex : data) total += sequence_reward(greedy_decode(m, ex.source).tokens, ex.reference);
  return total / static_cast<double>(data.size());
}

}  // namespace repodesc::abstractsum
