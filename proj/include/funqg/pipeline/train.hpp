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

// Training, evaluation and the constant-predictor baseline over a graph cache.

#ifndef FUNQG_PIPELINE_TRAIN_HPP
#define FUNQG_PIPELINE_TRAIN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "funqg/models.hpp"
#include "funqg/nn/metrics.hpp"
#include "funqg/pipeline/cache.hpp"
#include "funqg/pipeline/config.hpp"
#include "json.hpp"

namespace funqg::pipeline {

/// Per-task affine map applied to regression targets for the loss. Identity
/// for classification.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer identity(int tasks);
  /// Mean and population std of the labelled targets at `rows`; a task with
  /// zero spread keeps scale 1.
  static Standardizer fit(const GraphCache& cache, const std::vector<int>& rows);

  double forward(int task, double y) const { return (y - mean[task]) / scale[task]; }
  double inverse(int task, double z) const { return z * scale[task] + mean[task]; }
};

/// Tracks the best validation metric. should_stop() once `patience`
/// consecutive epochs fail to improve on the best.
class EarlyStopping {
 public:
  EarlyStopping(int patience, bool maximize);
  /// Records one epoch; returns true if it is a new best.
  bool update(double metric);
  bool should_stop() const { return stale_ >= patience_; }
  int best_epoch() const { return best_epoch_; }  // 1-based, 0 before any update
  double best() const { return best_; }

 private:
  int patience_;
  bool maximize_;
  int epochs_ = 0;
  int stale_ = 0;
  int best_epoch_ = 0;
  double best_ = 0.0;
};

/// "roc_auc" (higher is better) or "rmse" (lower is better).
std::string metric_name(TaskType task);
bool higher_is_better(TaskType task);

/// Mean over scored tasks of ROC-AUC or RMSE.
nn::TaskMetrics score(TaskType task, const FeatureMatrix& pred, const FeatureMatrix& target,
                      const FeatureMatrix& mask);

struct EpochLog {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double valid_metric = 0.0;
  bool improved = false;
};

struct TrainResult {
  ModelConfig model;
  nn::ParamStore<double> params;  // best-validation parameters
  Standardizer scaler;
  std::vector<EpochLog> log;
  int best_epoch = 0;
  double best_valid = 0.0;
  nlohmann::json manifest;

  nlohmann::json checkpoint() const;
};

/// `run.model` with widths and output count taken from the cache.
ModelConfig resolve_model(const RunConfig& run, const GraphCache& cache);

/// Seed that drives initialization, shuffling and dropout for one split.
std::uint64_t training_seed(const RunConfig& run, std::uint64_t split_seed);

/// Trains on split.train with early stopping on split.valid.
/// Throws kDegenerateSplit if either partition is empty and kNonFiniteLoss if
/// training diverges.
TrainResult train(const GraphCache& cache, const SplitAssignment& split, const RunConfig& run);

/// Denormalized predictions (rows follow `rows`).
FeatureMatrix predict_rows(nn::ParamStore<double>& params, const ModelConfig& model,
                           const Standardizer& scaler, const GraphCache& cache,
                           const std::vector<int>& rows);

struct EvalReport {
  std::string metric;
  double value = 0.0;
  nn::TaskMetrics detail;
  int rows = 0;
  std::uint64_t split_seed = 0;
  std::string config_digest;
};

/// Scores a checkpoint on split.test only. Throws kShapeMismatch if the
/// checkpoint does not fit the cache and kManifestMismatch if it was trained
/// on a differently coarsened cache.
EvalReport evaluate(const GraphCache& cache, const SplitAssignment& split,
                    const nlohmann::json& checkpoint);

/// Test score of predicting the train-partition mean of every task.
double constant_baseline(const GraphCache& cache, const SplitAssignment& split);

nlohmann::json to_json(const EvalReport& r);

}  // namespace funqg::pipeline

#endif  // FUNQG_PIPELINE_TRAIN_HPP
