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

#include "funqg/nn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "funqg/error.hpp"
#include "funqg/log.hpp"

namespace funqg::nn {

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error(ErrorCode::kShapeMismatch, "roc_auc lengths");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  // Mid-ranks: each tie block shares the average of its 1-based ranks.
  double positive_rank_sum = 0.0;
  double positives = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] != 0) {
        positive_rank_sum += mid;
        positives += 1.0;
      }
    }
    i = j;
  }
  const double negatives = static_cast<double>(scores.size()) - positives;
  if (positives == 0.0 || negatives == 0.0) {
    throw Error(ErrorCode::kSingleClass, "ROC-AUC needs both classes");
  }
  return (positive_rank_sum - positives * (positives + 1.0) / 2.0) / (positives * negatives);
}

double rmse(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size()) throw Error(ErrorCode::kShapeMismatch, "rmse lengths");
  if (pred.empty()) throw Error(ErrorCode::kEmptyDataset, "rmse of nothing");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += (pred[i] - target[i]) * (pred[i] - target[i]);
  return std::sqrt(sum / static_cast<double>(pred.size()));
}

namespace {

void check_shapes(const FeatureMatrix& a, const FeatureMatrix& b, const FeatureMatrix& m) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != m.rows() || a.cols() != m.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "metric inputs differ in shape");
  }
}

}  // namespace

TaskMetrics multitask_roc_auc(const FeatureMatrix& scores, const FeatureMatrix& labels,
                              const FeatureMatrix& mask) {
  check_shapes(scores, labels, mask);
  TaskMetrics out;
  double total = 0.0;
  for (Eigen::Index c = 0; c < scores.cols(); ++c) {
    std::vector<double> s;
    std::vector<int> y;
    for (Eigen::Index r = 0; r < scores.rows(); ++r) {
      if (mask(r, c) == 0.0) continue;
      s.push_back(scores(r, c));
      y.push_back(labels(r, c) > 0.5 ? 1 : 0);
    }
    try {
      const double auc = roc_auc(s, y);
      out.per_task.push_back(auc);
      total += auc;
      ++out.scored_tasks;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSingleClass) throw;
      log_warning("task " + std::to_string(c) + " skipped: only one class present");
      out.per_task.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  if (out.scored_tasks == 0) throw Error(ErrorCode::kSingleClass, "no task has both classes");
  out.mean = total / out.scored_tasks;
  return out;
}

TaskMetrics multitask_rmse(const FeatureMatrix& pred, const FeatureMatrix& target,
                           const FeatureMatrix& mask) {
  check_shapes(pred, target, mask);
  TaskMetrics out;
  double total = 0.0;
  for (Eigen::Index c = 0; c < pred.cols(); ++c) {
    std::vector<double> p, t;
    for (Eigen::Index r = 0; r < pred.rows(); ++r) {
      if (mask(r, c) == 0.0) continue;
      p.push_back(pred(r, c));
      t.push_back(target(r, c));
    }
    if (p.empty()) throw Error(ErrorCode::kAllMasked, "task " + std::to_string(c) + " has no labels");
    out.per_task.push_back(rmse(p, t));
    total += out.per_task.back();
    ++out.scored_tasks;
  }
  out.mean = total / out.scored_tasks;
  return out;
}

}  // namespace funqg::nn
