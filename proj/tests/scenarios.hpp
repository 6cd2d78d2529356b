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

// Small training scenarios shared by the unit tests and the acceptance
// runner.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "repodesc/abstractsum/decode.hpp"
#include "repodesc/abstractsum/train.hpp"
#include "repodesc/extractive.hpp"
#include "repodesc/rouge.hpp"
#include "repodesc/textcore.hpp"

namespace scenario {

struct ToyPair {
  std::string readme;
  std::string description;
};

inline const std::vector<ToyPair>& toy_pairs() {
  static const std::vector<ToyPair> pairs = {
      {"# serialport-projector\n\nThis package talks to projectors over RS-232. It supports power, input and "
       "volume commands.\n\n## Install\n\nRun the installer and plug in the cable.",
       "Library to help control your projector over a serial connection."},
      {"# signalr-swift\n\nA SignalR client for iOS and macOS apps. Connect to hubs, invoke methods and receive "
       "events.\n\nWritten in Swift with no dependencies.",
       "SignalR client library written in pure Swift"},
      {"# mc-server\n\nA Minecraft server that loads plugins at runtime. Worlds are stored on disk and streamed "
       "to players.\n\n## Usage\n\nStart the jar and connect.",
       "A lightweight, fast and extensible game server for Minecraft"},
      {"# bluemix-go\n\nGo bindings for the Bluemix REST endpoints. Covers accounts, regions and "
       "containers.\n\nSee the examples folder.",
       "Bluemix API with Go"},
      {"# webhook-relay\n\nReceives webhooks and forwards them to internal services. Retries failed deliveries "
       "with backoff.\n\nConfigure routes in a YAML file.",
       "Tool to forward webhooks to services behind a firewall"},
  };
  return pairs;
}

inline repodesc::abstractsum::ModelConfig toy_model_config(std::uint64_t seed = 7) {
  repodesc::abstractsum::ModelConfig cfg;
  cfg.embed_dim = 32;
  cfg.hidden_dim = 48;
  cfg.attn_dim = 32;
  cfg.max_source_len = 60;
  cfg.max_target_len = 16;
  cfg.seed = seed;
  return cfg;
}

// Vocabulary from every README and description token of the given pairs.
inline repodesc::abstractsum::Vocab toy_vocab(const std::vector<ToyPair>& pairs, std::size_t max_source) {
  namespace as = repodesc::abstractsum;
  std::vector<std::vector<std::string>> corpus;
  for (const auto& p : pairs) {
    corpus.push_back(as::readme_tokens(p.readme, max_source));
    corpus.push_back(as::description_tokens(p.description));
  }
  return as::build_vocab(corpus, 50000);
}

inline std::vector<repodesc::abstractsum::Example> toy_examples(const repodesc::abstractsum::Model& m,
                                                                const std::vector<ToyPair>& pairs) {
  namespace as = repodesc::abstractsum;
  std::vector<as::Example> out;
  for (const auto& p : pairs) {
    out.push_back(as::make_example(m, as::readme_tokens(p.readme, m.params.config.max_source_len),
                                   as::description_tokens(p.description)));
  }
  return out;
}

inline std::vector<repodesc::Token> as_tokens(const std::vector<std::string>& words) {
  std::vector<repodesc::Token> out;
  for (const auto& w : words) out.emplace_back(w);
  return out;
}

struct MemorizationResult {
  std::size_t steps = 0;
  std::size_t exact = 0;
  std::size_t total = 0;
  double abstract_rouge_l = 0.0;
  double leading_rouge_l = 0.0;
  repodesc::abstractsum::Model model;
  std::vector<repodesc::abstractsum::Example> data;
};

inline MemorizationResult memorization(std::size_t max_steps = 2000) {
  namespace as = repodesc::abstractsum;
  const auto& pairs = toy_pairs();
  MemorizationResult r;
  const as::ModelConfig cfg = toy_model_config();
  r.model.vocab = toy_vocab(pairs, cfg.max_source_len);
  r.model.params = as::ModelParameters::initialize(cfg, r.model.vocab.size());
  r.data = toy_examples(r.model, pairs);
  as::TrainConfig tc;
  tc.ml_steps = max_steps;
  tc.learning_rate = 0.5;
  tc.target_loss = 0.01;
  tc.seed = 7;
  r.steps = as::train_ml(r.model, r.data, tc).size();

  std::vector<std::pair<std::vector<repodesc::Token>, std::vector<repodesc::Token>>> abs_pairs, lead_pairs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const as::Decoded d = as::greedy_decode(r.model, r.data[i].source);
    if (d.tokens == r.data[i].reference) ++r.exact;
    abs_pairs.emplace_back(as_tokens(d.tokens), as_tokens(r.data[i].reference));
    const auto doc = repodesc::make_document(pairs[i].readme);
    lead_pairs.emplace_back(repodesc::tokenize(repodesc::leading(doc).text), as_tokens(r.data[i].reference));
  }
  r.total = pairs.size();
  r.abstract_rouge_l = repodesc::evaluate_corpus(abs_pairs).rl.f1;
  r.leading_rouge_l = repodesc::evaluate_corpus(lead_pairs).rl.f1;
  return r;
}

struct CopyProbeResult {
  bool copied = false;
  bool in_vocab = true;
  std::string output;
};

// Overfits one pair whose description contains a token that appears in the
// README but not in the vocabulary; the decoder can only emit it by copying.
inline CopyProbeResult copy_probe(std::size_t max_steps = 800) {
  namespace as = repodesc::abstractsum;
  const ToyPair pair{
      "# balena-pihole\n\nRuns Pi-hole and dnscrypt-proxy on a raspberrypi3 with balenaCloud. PADD shows "
      "live stats.\n\n## Setup\n\nFlash the image and open the dashboard.",
      "raspberrypi3 balenaCloud stack with Pi-hole, PADD, & dnscrypt-proxy"};
  const std::string probe = "dnscrypt-proxy";
  CopyProbeResult r;
  as::Model m;
  const as::ModelConfig cfg = toy_model_config(11);
  m.vocab = toy_vocab(toy_pairs(), cfg.max_source_len);
  r.in_vocab = m.vocab.contains(probe);
  m.params = as::ModelParameters::initialize(cfg, m.vocab.size());
  const std::vector<as::Example> data = {
      as::make_example(m, as::readme_tokens(pair.readme, cfg.max_source_len), as::description_tokens(pair.description))};
  as::TrainConfig tc;
  tc.ml_steps = max_steps;
  tc.target_loss = 0.01;
  tc.seed = 11;
  as::train_ml(m, data, tc);
  const as::Decoded d = as::greedy_decode(m, data[0].source);
  r.output = d.text();
  r.copied = std::find(d.tokens.begin(), d.tokens.end(), probe) != d.tokens.end();
  return r;
}

struct ScstCurve {
  std::vector<double> rouge_l;  // before SCST, then after each epoch
};

// Partial ML warm start followed by self-critical epochs; records the mean
// greedy ROUGE-L F1 after each epoch.
inline ScstCurve scst_curve(std::size_t warm_steps = 300, std::size_t epochs = 5, double lr = 0.02,
                            std::size_t batch = 1, std::uint64_t seed = 3) {
  namespace as = repodesc::abstractsum;
  const auto& pairs = toy_pairs();
  as::Model m;
  const as::ModelConfig cfg = toy_model_config(seed);
  m.vocab = toy_vocab(pairs, cfg.max_source_len);
  m.params = as::ModelParameters::initialize(cfg, m.vocab.size());
  const auto data = toy_examples(m, pairs);
  as::TrainConfig tc;
  tc.ml_steps = warm_steps;
  tc.seed = seed;
  as::train_ml(m, data, tc);
  ScstCurve c;
  c.rouge_l.push_back(as::mean_greedy_rouge_l(m, data));
  tc.scst_epochs = 1;
  tc.scst_learning_rate = lr;
  tc.batch_size = batch;
  for (std::size_t e = 0; e < epochs; ++e) {
    tc.seed = seed * 1000 + e;
    as::train_scst(m, data, tc);
    c.rouge_l.push_back(as::mean_greedy_rouge_l(m, data));
  }
  return c;
}

}  // namespace scenario
