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

#include "funqg/pipeline/train.hpp"

#include <cmath>

#include "funqg/error.hpp"
#include "funqg/hash.hpp"
#include "funqg/log.hpp"
#include "funqg/nn/checkpoint.hpp"
#include "funqg/version.hpp"

namespace funqg::pipeline {
namespace {

using nlohmann::json;

constexpr int kEvalChunk = 256;

void require_rows(const SplitAssignment& split) {
  if (split.train.empty() || split.valid.empty()) {
    throw Error(ErrorCode::kDegenerateSplit, "training needs nonempty train and valid partitions");
  }
}

GraphBatch batch_of(const GraphCache& cache, const std::vector<int>& rows, std::size_t begin,
                    std::size_t end) {
  std::vector<const FeatureGraph*> graphs;
  graphs.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) graphs.push_back(&cache.records.at(rows[i]).graph);
  return make_batch(graphs);
}

// Targets (standardized) and mask for `rows`.
void labels_of(const GraphCache& cache, const std::vector<int>& rows, std::size_t begin,
               std::size_t end, const Standardizer& scaler, bool standardize,
               FeatureMatrix& target, FeatureMatrix& mask) {
  const int tasks = static_cast<int>(cache.header.targets.size());
  target.setZero(static_cast<Eigen::Index>(end - begin), tasks);
  mask.setZero(static_cast<Eigen::Index>(end - begin), tasks);
  for (std::size_t i = begin; i < end; ++i) {
    const CacheRecord& r = cache.records.at(rows[i]);
    const auto row = static_cast<Eigen::Index>(i - begin);
    for (int k = 0; k < tasks; ++k) {
      mask(row, k) = r.mask[k];
      if (r.mask[k] == 0.0) continue;
      target(row, k) = standardize ? scaler.forward(k, r.targets[k]) : r.targets[k];
    }
  }
}

json scaler_json(const Standardizer& s) { return {{"mean", s.mean}, {"scale", s.scale}}; }

}  // namespace

Standardizer Standardizer::identity(int tasks) {
  return {std::vector<double>(tasks, 0.0), std::vector<double>(tasks, 1.0)};
}

Standardizer Standardizer::fit(const GraphCache& cache, const std::vector<int>& rows) {
  const int tasks = static_cast<int>(cache.header.targets.size());
  Standardizer s = identity(tasks);
  for (int k = 0; k < tasks; ++k) {
    double n = 0.0, sum = 0.0;
    for (int r : rows) {
      const CacheRecord& rec = cache.records.at(r);
      if (rec.mask[k] == 0.0) continue;
      n += 1.0;
      sum += rec.targets[k];
    }
    if (n == 0.0) continue;
    const double mean = sum / n;
    double ss = 0.0;
    for (int r : rows) {
      const CacheRecord& rec = cache.records.at(r);
      if (rec.mask[k] == 0.0) continue;
      ss += (rec.targets[k] - mean) * (rec.targets[k] - mean);
    }
    const double sd = std::sqrt(ss / n);
    s.mean[k] = mean;
    s.scale[k] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

EarlyStopping::EarlyStopping(int patience, bool maximize) : patience_(patience), maximize_(maximize) {
  if (patience < 1) throw Error(ErrorCode::kBadConfig, "patience must be at least 1");
}

bool EarlyStopping::update(double metric) {
  ++epochs_;
  const bool improved = best_epoch_ == 0 || (maximize_ ? metric > best_ : metric < best_);
  if (improved) {
    best_ = metric;
    best_epoch_ = epochs_;
    stale_ = 0;
  } else {
    ++stale_;
  }
  return improved;
}

std::string metric_name(TaskType task) {
  return task == TaskType::kClassification ? "roc_auc" : "rmse";
}

bool higher_is_better(TaskType task) { return task == TaskType::kClassification; }

nn::TaskMetrics score(TaskType task, const FeatureMatrix& pred, const FeatureMatrix& target,
                      const FeatureMatrix& mask) {
  return task == TaskType::kClassification ? nn::multitask_roc_auc(pred, target, mask)
                                           : nn::multitask_rmse(pred, target, mask);
}

json TrainResult::checkpoint() const { return nn::to_json(params, manifest); }

ModelConfig resolve_model(const RunConfig& run, const GraphCache& cache) {
  ModelConfig m = run.model;
  m.node_width = cache.header.node_width;
  m.edge_width = cache.header.edge_width;
  m.outputs = static_cast<int>(cache.header.targets.size());
  m.validate();
  return m;
}

std::uint64_t training_seed(const RunConfig& run, std::uint64_t split_seed) {
  return hash_combine(run.seed, split_seed);
}

FeatureMatrix predict_rows(nn::ParamStore<double>& params, const ModelConfig& model,
                           const Standardizer& scaler, const GraphCache& cache,
                           const std::vector<int>& rows) {
  FeatureMatrix out(static_cast<Eigen::Index>(rows.size()), model.outputs);
  for (std::size_t begin = 0; begin < rows.size(); begin += kEvalChunk) {
    const std::size_t end = std::min(rows.size(), begin + kEvalChunk);
    const FeatureMatrix raw = predict(params, batch_of(cache, rows, begin, end), model);
    for (Eigen::Index r = 0; r < raw.rows(); ++r) {
      for (int k = 0; k < model.outputs; ++k) {
        out(static_cast<Eigen::Index>(begin) + r, k) = scaler.inverse(k, raw(r, k));
      }
    }
  }
  return out;
}

TrainResult train(const GraphCache& cache, const SplitAssignment& split, const RunConfig& run) {
  run.validate();
  require_rows(split);
  check_cache(cache, cache.header.node_width, cache.header.edge_width, run.coarsen);
  const TaskType task = cache.header.task;
  const bool regression = task == TaskType::kRegression;

  TrainResult result;
  result.model = resolve_model(run, cache);
  result.scaler = regression ? Standardizer::fit(cache, split.train)
                             : Standardizer::identity(result.model.outputs);
  const std::uint64_t seed = training_seed(run, split.seed);
  const nn::Rng root(seed);
  nn::Rng init_rng = root.fork(0);
  nn::Rng shuffle_rng = root.fork(1);
  nn::Rng dropout_rng = root.fork(2);
  nn::ParamStore<double> params = init_params<double>(result.model, init_rng);
  result.params = params;

  FeatureMatrix valid_target, valid_mask;
  labels_of(cache, split.valid, 0, split.valid.size(), result.scaler, false, valid_target,
            valid_mask);

  EarlyStopping stopper(run.patience, higher_is_better(task));
  std::vector<int> order = split.train;
  const std::size_t bs = static_cast<std::size_t>(run.batch_size);
  for (int epoch = 1; epoch <= run.max_epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double loss_sum = 0.0;
    int batches = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += bs) {
      const std::size_t end = std::min(order.size(), begin + bs);
      const GraphBatch batch = batch_of(cache, order, begin, end);
      FeatureMatrix target, mask;
      labels_of(cache, order, begin, end, result.scaler, regression, target, mask);
      if (mask.sum() == 0.0) continue;
      try {
        nn::Tape<double> t;
        const nn::Var out = forward(t, params, batch, result.model, dropout_rng, true);
        const nn::Var loss = regression ? nn::masked_mse(t, out, target, mask)
                                        : nn::masked_bce(t, out, target, mask);
        loss_sum += t.value(loss)(0, 0);
        t.backward(loss);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNonFiniteValue && e.code() != ErrorCode::kNonFiniteLoss) throw;
        throw Error(ErrorCode::kNonFiniteLoss, "training diverged at epoch " +
                                                   std::to_string(epoch) + ", batch " +
                                                   std::to_string(batches + 1) + ": " + e.what());
      }
      nn::adam_step(params, run.optimizer);
      nn::max_norm(params, run.max_norm);
      ++batches;
    }

    FeatureMatrix pred;
    try {
      pred = predict_rows(params, result.model, result.scaler, cache, split.valid);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonFiniteValue) throw;
      throw Error(ErrorCode::kNonFiniteLoss, "validation predictions diverged at epoch " +
                                                 std::to_string(epoch) + ": " + e.what());
    }
    const double metric = score(task, pred, valid_target, valid_mask).mean;
    if (!std::isfinite(metric)) {
      throw Error(ErrorCode::kNonFiniteLoss, "validation metric is not finite at epoch " +
                                                 std::to_string(epoch));
    }
    EpochLog entry{epoch, batches > 0 ? loss_sum / batches : 0.0, metric, stopper.update(metric)};
    if (entry.improved) result.params = params;
    result.log.push_back(entry);
    if (stopper.should_stop()) break;
  }
  result.best_epoch = stopper.best_epoch();
  result.best_valid = stopper.best();
  result.manifest = {{"model", to_json(result.model)},
                     {"run", to_json(run)},
                     {"config_digest", config_digest(run)},
                     {"split_seed", split.seed},
                     {"training_seed", seed},
                     {"task", std::string(to_string(task))},
                     {"targets", cache.header.targets},
                     {"coarsen", cache.header.coarsen},
                     {"scaler", scaler_json(result.scaler)},
                     {"best_epoch", result.best_epoch},
                     {"best_valid", result.best_valid},
                     {"metric", metric_name(task)},
                     {"tool_version", std::string(kToolVersion)}};
  return result;
}

EvalReport evaluate(const GraphCache& cache, const SplitAssignment& split, const json& checkpoint) {
  if (split.test.empty()) throw Error(ErrorCode::kDegenerateSplit, "test partition is empty");
  ModelConfig model;
  Standardizer scaler;
  json manifest;
  try {
    manifest = checkpoint.at("manifest");
    model = model_config_from_json(manifest.at("model"));
    scaler.mean = manifest.at("scaler").at("mean").get<std::vector<double>>();
    scaler.scale = manifest.at("scaler").at("scale").get<std::vector<double>>();
    if (manifest.at("coarsen").get<bool>() != cache.header.coarsen) {
      throw Error(ErrorCode::kManifestMismatch, "checkpoint and cache differ in coarsening");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadFile, std::string("malformed checkpoint manifest: ") + e.what());
  }
  if (model.node_width != cache.header.node_width || model.edge_width != cache.header.edge_width ||
      model.outputs != static_cast<int>(cache.header.targets.size()) ||
      static_cast<int>(scaler.mean.size()) != model.outputs ||
      static_cast<int>(scaler.scale.size()) != model.outputs) {
    throw Error(ErrorCode::kShapeMismatch, "checkpoint does not fit the cache");
  }
  nn::Rng unused(0);
  nn::ParamStore<double> params = init_params<double>(model, unused);
  nn::load_values(checkpoint, params);

  const FeatureMatrix pred = predict_rows(params, model, scaler, cache, split.test);
  FeatureMatrix target, mask;
  labels_of(cache, split.test, 0, split.test.size(), scaler, false, target, mask);
  EvalReport report;
  report.metric = metric_name(cache.header.task);
  report.detail = score(cache.header.task, pred, target, mask);
  report.value = report.detail.mean;
  report.rows = static_cast<int>(split.test.size());
  report.split_seed = split.seed;
  report.config_digest = manifest.value("config_digest", "");
  return report;
}

double constant_baseline(const GraphCache& cache, const SplitAssignment& split) {
  if (split.train.empty() || split.test.empty()) {
    throw Error(ErrorCode::kDegenerateSplit, "baseline needs train and test rows");
  }
  const Standardizer s = Standardizer::fit(cache, split.train);
  FeatureMatrix pred(static_cast<Eigen::Index>(split.test.size()),
                     static_cast<Eigen::Index>(s.mean.size()));
  for (Eigen::Index r = 0; r < pred.rows(); ++r) {
    for (Eigen::Index k = 0; k < pred.cols(); ++k) pred(r, k) = s.mean[k];
  }
  FeatureMatrix target, mask;
  labels_of(cache, split.test, 0, split.test.size(), s, false, target, mask);
  return score(cache.header.task, pred, target, mask).mean;
}

json to_json(const EvalReport& r) {
  json per_task = json::array();
  for (double v : r.detail.per_task) {
    per_task.push_back(std::isfinite(v) ? json(v) : json(nullptr));
  }
  return {{"metric", r.metric},
          {"value", r.value},
          {"per_task", std::move(per_task)},
          {"scored_tasks", r.detail.scored_tasks},
          {"partition", "test"},
          {"rows", r.rows},
          {"split_seed", r.split_seed},
          {"config_digest", r.config_digest},
          {"tool_version", std::string(kToolVersion)}};
}

}  // namespace funqg::pipeline
