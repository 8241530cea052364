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

#include "funqg/pipeline/protocol.hpp"

#include <cmath>
#include <cstdio>

#include "funqg/error.hpp"
#include "funqg/log.hpp"
#include "funqg/pipeline/workers.hpp"
#include "funqg/version.hpp"

namespace funqg::pipeline {
namespace {

using nlohmann::json;

void mean_std(const std::vector<double>& xs, double& mean, double& std) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  std = std::sqrt(ss / static_cast<double>(xs.size()));
}

template <typename T>
const T& pick(const std::vector<T>& choices, nn::Rng& rng) {
  return choices[rng.index(choices.size())];
}

SplitAssignment split_for(const GraphCache& cache, const RunConfig& run, std::uint64_t seed) {
  const auto keys = cache.scaffold_keys();
  return scaffold_split(keys, seed, run.ratios);
}

json norm_json(double c) { return std::isinf(c) ? json("inf") : json(c); }

}  // namespace

std::string format_mean_std(double mean, double std) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f(%.3f)", mean, std);
  return buf;
}

ProtocolReport run_protocol(const GraphCache& cache, const RunConfig& run,
                            std::span<const std::uint64_t> seeds, int workers) {
  run.validate();
  if (seeds.empty()) throw Error(ErrorCode::kBadConfig, "protocol needs at least one seed");
  ProtocolReport report;
  report.metric = metric_name(cache.header.task);
  report.config_digest = config_digest(run);
  report.seeds.resize(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), workers, [&](int i) {
    const SplitAssignment split = split_for(cache, run, seeds[i]);
    const TrainResult trained = train(cache, split, run);
    SeedResult& r = report.seeds[i];
    r.split_seed = seeds[i];
    r.train_rows = static_cast<int>(split.train.size());
    r.valid_rows = static_cast<int>(split.valid.size());
    r.test_rows = static_cast<int>(split.test.size());
    r.epochs = static_cast<int>(trained.log.size());
    r.best_epoch = trained.best_epoch;
    r.best_valid = trained.best_valid;
    r.test = evaluate(cache, split, trained.checkpoint());
    r.baseline = constant_baseline(cache, split);
  });
  std::vector<double> values, baselines;
  for (const SeedResult& r : report.seeds) {
    values.push_back(r.test.value);
    baselines.push_back(r.baseline);
  }
  mean_std(values, report.mean, report.std);
  mean_std(baselines, report.baseline_mean, report.baseline_std);
  return report;
}

json to_json(const ProtocolReport& r) {
  json seeds = json::array();
  for (const SeedResult& s : r.seeds) {
    seeds.push_back({{"split_seed", s.split_seed},
                     {"sizes", {s.train_rows, s.valid_rows, s.test_rows}},
                     {"epochs", s.epochs},
                     {"best_epoch", s.best_epoch},
                     {"best_valid", s.best_valid},
                     {"test", to_json(s.test)},
                     {"baseline", s.baseline}});
  }
  return {{"metric", r.metric},
          {"result", format_mean_std(r.mean, r.std)},
          {"mean", r.mean},
          {"std", r.std},
          {"baseline", format_mean_std(r.baseline_mean, r.baseline_std)},
          {"baseline_mean", r.baseline_mean},
          {"seeds", std::move(seeds)},
          {"config_digest", r.config_digest},
          {"tool_version", std::string(kToolVersion)}};
}

RunConfig sample_config(const RunConfig& base, nn::Rng& rng) {
  const SearchSpace& s = base.search;
  RunConfig c = base;
  c.model.hidden =
      s.hidden_min + static_cast<int>(rng.index(static_cast<std::uint64_t>(s.hidden_max - s.hidden_min + 1)));
  c.model.steps = pick(base.coarsen ? s.steps_coarsened : s.steps_raw, rng);
  c.optimizer.lr = std::exp(rng.uniform(std::log(s.lr_min), std::log(s.lr_max)));
  c.model.dropout = pick(s.dropouts, rng);
  c.max_norm = pick(s.max_norms, rng);
  c.model.ffn_hidden = pick(s.ffn_widths, rng);
  c.batch_size = pick(s.batch_sizes, rng);
  return c;
}

SearchResult evaluate_candidates(const GraphCache& cache, const RunConfig& base,
                                 const std::vector<RunConfig>& candidates, int workers) {
  if (candidates.empty()) throw Error(ErrorCode::kBadConfig, "search budget must be at least 1");
  SearchResult result;
  result.metric = metric_name(cache.header.task);
  result.trials.resize(candidates.size());
  const SplitAssignment split = split_for(cache, base, base.split_seeds.at(0));
  parallel_for(static_cast<int>(candidates.size()), workers, [&](int i) {
    Trial& trial = result.trials[i];
    trial.index = i;
    trial.config = candidates[i];
    try {
      const TrainResult trained = train(cache, split, candidates[i]);
      trial.ok = true;
      trial.valid_metric = trained.best_valid;
      trial.epochs = static_cast<int>(trained.log.size());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonFiniteLoss) throw;
      trial.error = e.what();
    }
  });
  const bool maximize = higher_is_better(cache.header.task);
  for (const Trial& t : result.trials) {
    if (!t.ok) {
      log_warning("trial " + std::to_string(t.index) + " failed: " + t.error);
      continue;
    }
    if (result.best < 0) {
      result.best = t.index;
      continue;
    }
    const double best = result.trials[result.best].valid_metric;
    if (maximize ? t.valid_metric > best : t.valid_metric < best) result.best = t.index;
  }
  if (result.best < 0) throw Error(ErrorCode::kNonFiniteLoss, "every search trial diverged");
  return result;
}

SearchResult hyper_search(const GraphCache& cache, const RunConfig& base, int budget,
                          std::uint64_t seed, int workers) {
  if (budget < 1) throw Error(ErrorCode::kBadConfig, "search budget must be at least 1");
  base.validate();
  const nn::Rng root(seed);
  std::vector<RunConfig> candidates;
  for (int i = 0; i < budget; ++i) {
    nn::Rng rng = root.fork(static_cast<std::uint64_t>(i));
    candidates.push_back(sample_config(base, rng));
  }
  SearchResult result = evaluate_candidates(cache, base, candidates, workers);
  result.seed = seed;
  return result;
}

json to_json(const SearchResult& r) {
  json trials = json::array();
  for (const Trial& t : r.trials) {
    json entry = {{"index", t.index},
                  {"ok", t.ok},
                  {"hidden", t.config.model.hidden},
                  {"steps", t.config.model.steps},
                  {"ffn_hidden", t.config.model.ffn_hidden},
                  {"dropout", t.config.model.dropout},
                  {"lr", t.config.optimizer.lr},
                  {"max_norm", norm_json(t.config.max_norm)},
                  {"batch_size", t.config.batch_size}};
    if (t.ok) {
      entry["valid_metric"] = t.valid_metric;
      entry["epochs"] = t.epochs;
    } else {
      entry["error"] = t.error;
    }
    trials.push_back(std::move(entry));
  }
  return {{"metric", r.metric},
          {"seed", r.seed},
          {"best", r.best},
          {"best_config", to_json(r.best_config())},
          {"best_config_digest", config_digest(r.best_config())},
          {"trials", std::move(trials)},
          {"tool_version", std::string(kToolVersion)}};
}

}  // namespace funqg::pipeline
