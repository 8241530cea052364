// Copyright 2026 The funqg Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "funqg/pipeline/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "funqg/error.hpp"
#include "funqg/hash.hpp"

namespace funqg::pipeline {
namespace {

using nlohmann::json;

// JSON has no infinity; it is spelled "inf".
json norm_to_json(double c) { return std::isinf(c) ? json("inf") : json(c); }

double norm_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::kBadConfig, "max_norm must be a number or \"inf\"");
  }
  return j.get<double>();
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::kBadConfig, where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw Error(ErrorCode::kBadConfig, "unknown key " + where + "." + key);
  }
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void SearchSpace::validate() const {
  if (hidden_min < 1 || hidden_max < hidden_min) throw Error(ErrorCode::kBadConfig, "bad hidden range");
  if (!(lr_min > 0.0) || lr_max < lr_min) throw Error(ErrorCode::kBadConfig, "bad lr range");
  if (steps_coarsened.empty() || steps_raw.empty() || dropouts.empty() || max_norms.empty() ||
      ffn_widths.empty() || batch_sizes.empty()) {
    throw Error(ErrorCode::kBadConfig, "search choices must be nonempty");
  }
}

void RunConfig::validate() const {
  if (patience < 1) throw Error(ErrorCode::kBadConfig, "patience must be at least 1");
  if (batch_size < 1) throw Error(ErrorCode::kBadConfig, "batch_size must be at least 1");
  if (max_epochs < 1) throw Error(ErrorCode::kBadConfig, "max_epochs must be at least 1");
  if (!(max_norm > 0.0)) throw Error(ErrorCode::kBadConfig, "max_norm must be positive");
  if (!(optimizer.lr > 0.0) || !(optimizer.eps > 0.0) || optimizer.beta1 < 0.0 ||
      optimizer.beta1 >= 1.0 || optimizer.beta2 < 0.0 || optimizer.beta2 >= 1.0) {
    throw Error(ErrorCode::kBadConfig, "bad optimizer settings");
  }
  if (split_seeds.empty()) throw Error(ErrorCode::kBadConfig, "split_seeds is empty");
  if (model.hidden < 1 || model.steps < 0 || model.ffn_hidden < 0 || model.dropout < 0.0 ||
      model.dropout >= 1.0) {
    throw Error(ErrorCode::kBadConfig, "bad model settings");
  }
  search.validate();
}

json to_json(const ModelConfig& cfg) {
  return {{"architecture", std::string(to_string(cfg.architecture))},
          {"hidden", cfg.hidden},
          {"steps", cfg.steps},
          {"ffn_hidden", cfg.ffn_hidden},
          {"dropout", cfg.dropout},
          {"readout", cfg.readout == Readout::kMean ? "mean" : "sum"},
          {"node_width", cfg.node_width},
          {"edge_width", cfg.edge_width},
          {"outputs", cfg.outputs}};
}

ModelConfig model_config_from_json(const json& j) {
  reject_unknown(j,
                 {"architecture", "hidden", "steps", "ffn_hidden", "dropout", "readout",
                  "node_width", "edge_width", "outputs"},
                 "model");
  ModelConfig cfg;
  if (j.contains("architecture")) {
    cfg.architecture = parse_architecture(j.at("architecture").get<std::string>());
  }
  if (j.contains("readout")) {
    const std::string r = j.at("readout");
    if (r == "mean") {
      cfg.readout = Readout::kMean;
    } else if (r == "sum") {
      cfg.readout = Readout::kSum;
    } else {
      throw Error(ErrorCode::kBadConfig, "readout must be mean or sum");
    }
  }
  read_if(j, "hidden", cfg.hidden);
  read_if(j, "steps", cfg.steps);
  read_if(j, "ffn_hidden", cfg.ffn_hidden);
  read_if(j, "dropout", cfg.dropout);
  read_if(j, "node_width", cfg.node_width);
  read_if(j, "edge_width", cfg.edge_width);
  read_if(j, "outputs", cfg.outputs);
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json norms = json::array();
  for (double c : cfg.search.max_norms) norms.push_back(norm_to_json(c));
  const SearchSpace& s = cfg.search;
  return {{"model", to_json(cfg.model)},
          {"optimizer",
           {{"lr", cfg.optimizer.lr},
            {"beta1", cfg.optimizer.beta1},
            {"beta2", cfg.optimizer.beta2},
            {"eps", cfg.optimizer.eps}}},
          {"max_norm", norm_to_json(cfg.max_norm)},
          {"batch_size", cfg.batch_size},
          {"max_epochs", cfg.max_epochs},
          {"patience", cfg.patience},
          {"split_seeds", cfg.split_seeds},
          {"seed", cfg.seed},
          {"coarsen", cfg.coarsen},
          {"ratios", cfg.ratios},
          {"search",
           {{"hidden_min", s.hidden_min},
            {"hidden_max", s.hidden_max},
            {"steps_coarsened", s.steps_coarsened},
            {"steps_raw", s.steps_raw},
            {"lr_min", s.lr_min},
            {"lr_max", s.lr_max},
            {"dropouts", s.dropouts},
            {"max_norms", std::move(norms)},
            {"ffn_widths", s.ffn_widths},
            {"batch_sizes", s.batch_sizes}}}};
}

RunConfig run_config_from_json(const json& j) {
  RunConfig cfg;
  try {
    reject_unknown(j,
                   {"model", "optimizer", "max_norm", "batch_size", "max_epochs", "patience",
                    "split_seeds", "seed", "coarsen", "ratios", "search"},
                   "config");
    if (j.contains("model")) cfg.model = model_config_from_json(j.at("model"));
    if (j.contains("optimizer")) {
      const json& o = j.at("optimizer");
      reject_unknown(o, {"lr", "beta1", "beta2", "eps"}, "optimizer");
      read_if(o, "lr", cfg.optimizer.lr);
      read_if(o, "beta1", cfg.optimizer.beta1);
      read_if(o, "beta2", cfg.optimizer.beta2);
      read_if(o, "eps", cfg.optimizer.eps);
    }
    if (j.contains("max_norm")) cfg.max_norm = norm_from_json(j.at("max_norm"));
    read_if(j, "batch_size", cfg.batch_size);
    read_if(j, "max_epochs", cfg.max_epochs);
    read_if(j, "patience", cfg.patience);
    read_if(j, "split_seeds", cfg.split_seeds);
    read_if(j, "seed", cfg.seed);
    read_if(j, "coarsen", cfg.coarsen);
    read_if(j, "ratios", cfg.ratios);
    if (j.contains("search")) {
      const json& s = j.at("search");
      reject_unknown(s,
                     {"hidden_min", "hidden_max", "steps_coarsened", "steps_raw", "lr_min",
                      "lr_max", "dropouts", "max_norms", "ffn_widths", "batch_sizes"},
                     "search");
      SearchSpace& out = cfg.search;
      read_if(s, "hidden_min", out.hidden_min);
      read_if(s, "hidden_max", out.hidden_max);
      read_if(s, "steps_coarsened", out.steps_coarsened);
      read_if(s, "steps_raw", out.steps_raw);
      read_if(s, "lr_min", out.lr_min);
      read_if(s, "lr_max", out.lr_max);
      read_if(s, "dropouts", out.dropouts);
      read_if(s, "ffn_widths", out.ffn_widths);
      read_if(s, "batch_sizes", out.batch_sizes);
      if (s.contains("max_norms")) {
        out.max_norms.clear();
        for (const auto& c : s.at("max_norms")) out.max_norms.push_back(norm_from_json(c));
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadConfig, std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig read_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kBadFile, "cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadConfig, path + ": " + e.what());
  }
  return run_config_from_json(j);
}

std::string config_digest(const RunConfig& cfg) {
  json j = to_json(cfg);
  j.erase("search");
  j.erase("split_seeds");
  return to_hex(hash_string(j.dump()));
}

}  // namespace funqg::pipeline
