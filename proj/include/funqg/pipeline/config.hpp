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

// Run configuration and its JSON form. Example:
//   {"model": {"architecture": "dmpnn", "hidden": 300, "steps": 3, "ffn_hidden": 0,
//              "dropout": 0.0, "readout": "mean"},
//    "optimizer": {"lr": 0.001, "beta1": 0.9, "beta2": 0.999, "eps": 1e-8},
//    "max_norm": "inf", "batch_size": 50, "max_epochs": 60, "patience": 10,
//    "split_seeds": [1, 2, 3], "seed": 0, "coarsen": true, "ratios": [0.8, 0.1, 0.1]}
// Missing keys keep their defaults; unknown keys are rejected.

#ifndef FUNQG_PIPELINE_CONFIG_HPP
#define FUNQG_PIPELINE_CONFIG_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "funqg/models.hpp"
#include "funqg/nn/param_store.hpp"
#include "json.hpp"

namespace funqg::pipeline {

/// Ranges sampled by hyper_search.
struct SearchSpace {
  int hidden_min = 64;
  int hidden_max = 300;
  std::vector<int> steps_coarsened = {2, 3, 4};
  std::vector<int> steps_raw = {3, 4, 5, 6};
  double lr_min = 1e-4;  // log-uniform
  double lr_max = 1e-2;
  std::vector<double> dropouts = {0.0, 0.1, 0.2, 0.4};
  std::vector<double> max_norms = {2.0, 3.0, std::numeric_limits<double>::infinity()};
  std::vector<int> ffn_widths = {0, 100, 200, 300};  // 0 means equal to hidden
  std::vector<int> batch_sizes = {32, 50, 64};

  void validate() const;
};

struct RunConfig {
  ModelConfig model;  // widths and outputs are taken from the cache
  nn::AdamConfig optimizer;
  double max_norm = std::numeric_limits<double>::infinity();
  int batch_size = 50;
  int max_epochs = 60;
  int patience = 10;
  std::vector<std::uint64_t> split_seeds = {1, 2, 3};
  std::uint64_t seed = 0;
  bool coarsen = true;
  std::array<double, 3> ratios = {0.8, 0.1, 0.1};
  SearchSpace search;

  /// Throws kBadConfig.
  void validate() const;
};

nlohmann::json to_json(const ModelConfig& cfg);
ModelConfig model_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);
/// Throws kBadConfig on unknown keys or ill-typed values.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig read_run_config(const std::string& path);

/// 16 hex digits identifying the training-relevant fields of `cfg`.
std::string config_digest(const RunConfig& cfg);

}  // namespace funqg::pipeline

#endif  // FUNQG_PIPELINE_CONFIG_HPP
