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

// Multi-seed evaluation protocol and seeded random hyperparameter search.

#ifndef FUNQG_PIPELINE_PROTOCOL_HPP
#define FUNQG_PIPELINE_PROTOCOL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "funqg/pipeline/train.hpp"

namespace funqg::pipeline {

/// "1.501(0.376)".
std::string format_mean_std(double mean, double std);

struct SeedResult {
  std::uint64_t split_seed = 0;
  int train_rows = 0;
  int valid_rows = 0;
  int test_rows = 0;
  int epochs = 0;
  int best_epoch = 0;
  double best_valid = 0.0;
  EvalReport test;
  double baseline = 0.0;  // constant predictor on the same split
};

struct ProtocolReport {
  std::string metric;
  std::vector<SeedResult> seeds;
  double mean = 0.0;
  double std = 0.0;  // population
  double baseline_mean = 0.0;
  double baseline_std = 0.0;
  std::string config_digest;
};

/// Per split seed: scaffold split, train, evaluate on test. Seeds run on up
/// to `workers` threads with identical results to a sequential run.
ProtocolReport run_protocol(const GraphCache& cache, const RunConfig& run,
                            std::span<const std::uint64_t> seeds, int workers);

nlohmann::json to_json(const ProtocolReport& r);

/// Draws one configuration from run.search around `base`.
RunConfig sample_config(const RunConfig& base, nn::Rng& rng);

struct Trial {
  int index = 0;
  RunConfig config;
  bool ok = false;
  double valid_metric = 0.0;
  int epochs = 0;
  std::string error;  // set when !ok
};

struct SearchResult {
  std::vector<Trial> trials;
  int best = -1;
  std::string metric;
  std::uint64_t seed = 0;

  const RunConfig& best_config() const { return trials.at(best).config; }
};

/// Trains every candidate on the scaffold split of base.split_seeds[0] and
/// keeps the best validation metric (ties go to the earlier candidate).
/// Diverging candidates are recorded as failed. Throws kNonFiniteLoss if all fail.
SearchResult evaluate_candidates(const GraphCache& cache, const RunConfig& base,
                                 const std::vector<RunConfig>& candidates, int workers);

/// Seeded random search: candidate i is drawn from Rng(seed).fork(i).
SearchResult hyper_search(const GraphCache& cache, const RunConfig& base, int budget,
                          std::uint64_t seed, int workers);

nlohmann::json to_json(const SearchResult& r);

}  // namespace funqg::pipeline

#endif  // FUNQG_PIPELINE_PROTOCOL_HPP
