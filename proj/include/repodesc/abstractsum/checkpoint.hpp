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

// Checkpoint format (JSON, version 1):
//
//   {"format": "repodesc-abstractsum", "version": 1,
//    "config": {"embed_dim", "hidden_dim", "attn_dim", "max_source_len",
//               "max_target_len", "seed", "init_scale"},
//    "vocab": ["<pad>", "<unk>", "<s>", "</s>", ...],
//    "tensors": {"<name>": {"rows": r, "cols": c, "data": [column-major]}}}
//
// Loss curves are CSV with header step,phase,loss,reward.

#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <span>
#include <string>

#include "json.hpp"
#include "repodesc/abstractsum/decode.hpp"
#include "repodesc/abstractsum/train.hpp"
#include "repodesc/error.hpp"

namespace repodesc::abstractsum {

inline constexpr std::string_view kCheckpointFormat = "repodesc-abstractsum";
inline constexpr int kCheckpointVersion = 1;

inline nlohmann::json config_to_json(const ModelConfig& c) {
  return {{"embed_dim", c.embed_dim},
          {"hidden_dim", c.hidden_dim},
          {"attn_dim", c.attn_dim},
          {"max_source_len", c.max_source_len},
          {"max_target_len", c.max_target_len},
          {"seed", c.seed},
          {"init_scale", c.init_scale}};
}

inline ModelConfig config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.embed_dim = j.at("embed_dim").get<int>();
  c.hidden_dim = j.at("hidden_dim").get<int>();
  c.attn_dim = j.value("attn_dim", 0);
  c.max_source_len = j.at("max_source_len").get<std::size_t>();
  c.max_target_len = j.at("max_target_len").get<std::size_t>();
  c.seed = j.value("seed", std::uint64_t{1});
  c.init_scale = j.value("init_scale", 0.1);
  c.validate();
  return c;
}

inline nlohmann::json model_to_json(const Model& m) {
  nlohmann::json tensors = nlohmann::json::object();
  m.params.visit([&](std::string_view name, const auto& t) {
    std::vector<double> data(t.data(), t.data() + t.size());
    tensors[std::string(name)] = {{"rows", t.rows()}, {"cols", t.cols()}, {"data", std::move(data)}};
  });
  return {{"format", kCheckpointFormat},
          {"version", kCheckpointVersion},
          {"config", config_to_json(m.params.config)},
          {"vocab", m.vocab.tokens()},
          {"tensors", std::move(tensors)}};
}

inline Model model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kCheckpointFormat) throw DataError("not a repodesc checkpoint");
    if (j.at("version").get<int>() != kCheckpointVersion) throw DataError("unsupported checkpoint version");
    Model m;
    m.vocab = Vocab::from_tokens(j.at("vocab").get<std::vector<std::string>>());
    m.params = ModelParameters::zeros(config_from_json(j.at("config")), m.vocab.size());
    const auto& tensors = j.at("tensors");
    m.params.visit([&](std::string_view name, auto& t) {
      const auto& e = tensors.at(std::string(name));
      const auto rows = e.at("rows").get<Eigen::Index>();
      const auto cols = e.at("cols").get<Eigen::Index>();
      const auto& data = e.at("data");
      if (rows != t.rows() || cols != t.cols() || static_cast<Eigen::Index>(data.size()) != t.size()) {
        throw DataError("tensor '" + std::string(name) + "' has the wrong shape");
      }
      for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = data[static_cast<std::size_t>(i)].get<double>();
    });
    if (!m.params.all_finite()) throw DataError("checkpoint contains non-finite values");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  }
}

inline void save_model(const Model& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << model_to_json(m).dump() << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

inline Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed checkpoint " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

inline void write_loss_csv(std::ostream& out, std::span<const LossPoint> curve) {
  out << "step,phase,loss,reward\n";
  for (const auto& p : curve) {
    out << p.step << ',' << p.phase << ',' << std::setprecision(17) << p.loss << ',' << p.reward << '\n';
  }
}

}  // namespace repodesc::abstractsum
