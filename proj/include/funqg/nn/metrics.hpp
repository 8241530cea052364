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

#ifndef FUNQG_NN_METRICS_HPP
#define FUNQG_NN_METRICS_HPP

#include <span>
#include <vector>

#include "funqg/graph.hpp"

namespace funqg::nn {

/// Probability that a random positive outscores a random negative, ties
/// counted one half. Throws kSingleClass unless both labels occur.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

/// Throws kShapeMismatch on length mismatch and kEmptyDataset when empty.
double rmse(std::span<const double> pred, std::span<const double> target);

struct TaskMetrics {
  double mean = 0.0;              // unweighted mean over scored tasks
  std::vector<double> per_task;   // NaN for skipped tasks
  int scored_tasks = 0;
};

/// Column-wise ROC-AUC over unmasked entries. Tasks with one class are
/// skipped with a warning; throws kSingleClass if every task is skipped.
TaskMetrics multitask_roc_auc(const FeatureMatrix& scores, const FeatureMatrix& labels,
                              const FeatureMatrix& mask);

/// Column-wise RMSE over unmasked entries; throws kAllMasked if a column
/// has no labels at all.
TaskMetrics multitask_rmse(const FeatureMatrix& pred, const FeatureMatrix& target,
                           const FeatureMatrix& mask);

}  // namespace funqg::nn

#endif  // FUNQG_NN_METRICS_HPP
