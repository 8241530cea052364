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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "funqg/error.hpp"
#include "funqg/nn/checkpoint.hpp"
#include "funqg/nn/gradcheck.hpp"
#include "funqg/nn/metrics.hpp"
#include "funqg/nn/ops.hpp"

namespace funqg::nn {
namespace {

using Mat = RowMatrix<double>;

Mat row(std::initializer_list<double> v) {
  Mat m(1, static_cast<Eigen::Index>(v.size()));
  std::copy(v.begin(), v.end(), m.data());
  return m;
}

TEST(Ops, ReluForwardBackward) {
  Tape<double> t;
  ParamStore<double> s;
  s.add("x", 1, 3);
  s[0].value = row({-1, 0, 2});
  const Var x = t.parameter(s, 0);
  const Var y = relu(t, x);
  EXPECT_EQ(t.value(y), row({0, 0, 2}));
  // d/dx sum(relu(x) * 1) via mse against relu(x) - 0.5 gives mask * 1.
  const Var loss = masked_mse(t, y, Mat(t.value(y).array() - 0.5), Mat::Ones(1, 3));
  t.backward(loss);
  const Mat g = s[0].grad;
  EXPECT_EQ(g(0, 0), 0.0);
  EXPECT_EQ(g(0, 1), 0.0);
  EXPECT_GT(g(0, 2), 0.0);
}

TEST(Ops, SegmentSum) {
  Tape<double> t;
  Mat v(3, 1);
  v << 1, 2, 3;
  const Var out = segment_sum(t, t.constant(v), {0, 0, 1}, 2);
  EXPECT_EQ(t.value(out)(0, 0), 3.0);
  EXPECT_EQ(t.value(out)(1, 0), 3.0);
}

TEST(Ops, ShapeMismatch) {
  Tape<double> t;
  const Var a = t.constant(Mat::Ones(2, 3));
  const Var b = t.constant(Mat::Ones(2, 3));
  try {
    matmul(t, a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
  EXPECT_THROW(add(t, a, t.constant(Mat::Ones(3, 2))), Error);
  EXPECT_THROW(segment_sum(t, a, {0}, 1), Error);
}

TEST(Ops, NonFiniteValueTrips) {
  Tape<double> t;
  Mat big = Mat::Constant(1, 1, 1e308);
  try {
    add(t, t.constant(big), t.constant(big));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteValue);
  }
}

TEST(Ops, MatmulMatchesEigen) {
  Rng rng(3);
  Mat a(5, 7), b(7, 4);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = rng.normal();
  EXPECT_TRUE(gemm_nn<double>(a, b).isApprox(a * b, 1e-13));
  EXPECT_TRUE(gemm_nt<double>(a, Mat(b.transpose())).isApprox(a * b, 1e-13));
  EXPECT_TRUE(gemm_tn<double>(Mat(a.transpose()), b).isApprox(a * b, 1e-13));
}

TEST(Gradcheck, MatmulFiniteDifferences) {
  const auto results = run_gradcheck_suite(11, 0);
  ASSERT_FALSE(results.empty());
  EXPECT_EQ(results.front().name, "matmul");
  EXPECT_LT(results.front().max_relative_error, 1e-6);
}

TEST(Gradcheck, EveryOpAndModel) {
  for (const auto& r : run_gradcheck_suite(2024, 8)) {
    EXPECT_TRUE(r.passed()) << r.name << " error " << r.max_relative_error;
  }
}

TEST(Dropout, IdentityCases) {
  Tape<double> t;
  Rng rng(1);
  const Var x = t.constant(Mat::Ones(4, 4));
  EXPECT_EQ(dropout(t, x, 0.0, rng, true).id, x.id);
  EXPECT_EQ(dropout(t, x, 0.5, rng, false).id, x.id);
  EXPECT_THROW(dropout(t, x, 1.0, rng, true), Error);
}

TEST(Dropout, SurvivorFraction) {
  Tape<double> t;
  Rng rng(99);
  const double p = 0.3;
  const Var y = dropout(t, t.constant(Mat::Ones(1000, 100)), p, rng, true);
  const Mat& v = t.value(y);
  const double survivors = static_cast<double>((v.array() != 0.0).count()) / v.size();
  EXPECT_NEAR(survivors, 1.0 - p, 0.01);
  EXPECT_NEAR(v.maxCoeff(), 1.0 / (1.0 - p), 1e-15);
}

TEST(Dropout, SameSeedSameMask) {
  Tape<double> t;
  Rng a(5), b(5);
  const Var x = t.constant(Mat::Ones(10, 10));
  EXPECT_EQ(t.value(dropout(t, x, 0.5, a, true)), t.value(dropout(t, x, 0.5, b, true)));
}

TEST(Adam, ZeroGradientLeavesParameters) {
  ParamStore<double> s;
  s.add("w", 2, 2);
  s[0].value << 1, 2, 3, 4;
  const Mat before = s[0].value;
  adam_step(s, {});
  EXPECT_EQ(s[0].value, before);
  EXPECT_EQ(s.step, 1);
}

TEST(Adam, FirstStepClosedForm) {
  ParamStore<double> s;
  s.add("w", 1, 1);
  s[0].grad(0, 0) = 1.0;
  AdamConfig cfg;
  adam_step(s, cfg);
  // m_hat = 1, v_hat = 1 after bias correction.
  EXPECT_DOUBLE_EQ(s[0].value(0, 0), -cfg.lr / (1.0 + cfg.eps));
  EXPECT_EQ(s[0].grad(0, 0), 0.0);
}

TEST(Adam, UpdatesShrink) {
  ParamStore<double> s;
  s.add("w", 1, 1);
  s[0].grad(0, 0) = 1.0;
  adam_step(s, {});
  const double d1 = std::abs(s[0].value(0, 0));
  const double before = s[0].value(0, 0);
  s[0].grad(0, 0) = 1.0;
  adam_step(s, {});
  EXPECT_LE(std::abs(s[0].value(0, 0) - before), d1);
}

TEST(MaxNorm, Examples) {
  ParamStore<double> s;
  s.add("w", 2, 2);
  s.add("b", 1, 2, true);
  s[0].value << 3, 4, 0.3, 0.4;
  s[1].value << 30, 40;
  max_norm(s, 2.5);
  EXPECT_DOUBLE_EQ(s[0].value(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(s[0].value(0, 1), 2.0);
  EXPECT_EQ(s[0].value(1, 0), 0.3);
  EXPECT_EQ(s[1].value(0, 0), 30.0);
  EXPECT_THROW(max_norm(s, 0.0), Error);
}

TEST(MaxNorm, Idempotent) {
  Rng rng(8);
  ParamStore<double> s;
  s.add("w", 20, 7);
  for (Eigen::Index i = 0; i < s[0].value.size(); ++i) s[0].value.data()[i] = 3 * rng.normal();
  max_norm(s, 1.7);
  const Mat once = s[0].value;
  max_norm(s, 1.7);
  EXPECT_EQ(s[0].value, once);
  for (Eigen::Index r = 0; r < once.rows(); ++r) EXPECT_LE(once.row(r).norm(), 1.7 * (1 + 1e-14));
}

TEST(Losses, BceOfZeroLogit) {
  Tape<double> t;
  const Var l = masked_bce(t, t.constant(Mat::Zero(1, 1)), Mat::Ones(1, 1), Mat::Ones(1, 1));
  EXPECT_NEAR(t.value(l)(0, 0), std::log(2.0), 1e-15);
}

TEST(Losses, MaskedEntryExcluded) {
  Tape<double> t;
  Mat logits(1, 2), labels(1, 2), mask(1, 2);
  logits << 5.0, 3.0;
  labels << 0.0, 1.0;
  mask << 0.0, 1.0;
  const Var both = masked_bce(t, t.constant(logits), labels, mask);
  const Var alone = masked_bce(t, t.constant(Mat::Constant(1, 1, 3.0)), Mat::Ones(1, 1), Mat::Ones(1, 1));
  EXPECT_DOUBLE_EQ(t.value(both)(0, 0), t.value(alone)(0, 0));
  try {
    masked_bce(t, t.constant(logits), labels, Mat::Zero(1, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAllMasked);
  }
}

TEST(Losses, MseZeroAtTarget) {
  Tape<double> t;
  Mat y(2, 2);
  y << 1, 2, 3, 4;
  EXPECT_EQ(t.value(mse(t, t.constant(y), y))(0, 0), 0.0);
}

TEST(Losses, BceStableForLargeLogits) {
  Tape<double> t;
  const Var l = masked_bce(t, t.constant(Mat::Constant(1, 1, -800.0)), Mat::Ones(1, 1), Mat::Ones(1, 1));
  EXPECT_DOUBLE_EQ(t.value(l)(0, 0), 800.0);
}

double pairwise_auc(const std::vector<double>& s, const std::vector<int>& y) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[i] != 1 || y[j] != 0) continue;
      pairs += 1;
      wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
    }
  }
  return wins / pairs;
}

TEST(Metrics, RocAucExamples) {
  EXPECT_DOUBLE_EQ(roc_auc(std::vector<double>{0.9, 0.1}, std::vector<int>{1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(roc_auc(std::vector<double>{0.1, 0.9}, std::vector<int>{1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(roc_auc(std::vector<double>{0.5, 0.5, 0.2}, std::vector<int>{1, 0, 0}), 0.75);
  try {
    roc_auc(std::vector<double>{0.1, 0.2}, std::vector<int>{1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingleClass);
  }
}

TEST(Metrics, RocAucMatchesPairwiseAndIsRankInvariant) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(40);
    std::vector<int> y(40);
    for (int i = 0; i < 40; ++i) {
      s[i] = std::round(rng.uniform() * 8) / 8;  // plenty of ties
      y[i] = i < 2 ? i : static_cast<int>(rng.index(2));
    }
    const double auc = roc_auc(s, y);
    EXPECT_NEAR(auc, pairwise_auc(s, y), 1e-12);
    std::vector<double> warped(s.size());
    std::transform(s.begin(), s.end(), warped.begin(), [](double x) { return std::exp(3 * x) - 7; });
    EXPECT_DOUBLE_EQ(roc_auc(warped, y), auc);
  }
}

TEST(Metrics, Rmse) {
  EXPECT_DOUBLE_EQ(rmse(std::vector<double>{1, 2}, std::vector<double>{1, 2}), 0.0);
  EXPECT_DOUBLE_EQ(rmse(std::vector<double>{0, 0}, std::vector<double>{3, 4}), std::sqrt(12.5));
}

TEST(Metrics, MultitaskSkipsSingleClassTasks) {
  Mat scores(4, 2), labels(4, 2), mask = Mat::Ones(4, 2);
  scores << 0.9, 0.1, 0.2, 0.3, 0.8, 0.5, 0.1, 0.7;
  labels << 1, 1, 0, 1, 1, 1, 0, 1;
  const auto m = multitask_roc_auc(scores, labels, mask);
  EXPECT_EQ(m.scored_tasks, 1);
  EXPECT_DOUBLE_EQ(m.mean, 1.0);
  EXPECT_TRUE(std::isnan(m.per_task[1]));
}

TEST(Checkpoint, RoundTripIsExact) {
  Rng rng(4);
  ParamStore<double> s;
  s.add("W", 3, 5);
  s.add("b", 1, 5, true);
  glorot_init(s, rng);
  s[1].value.setConstant(0.1);
  const auto j = nlohmann::json::parse(to_json(s, {{"k", 1}}).dump());
  ParamStore<double> r;
  r.add("W", 3, 5);
  r.add("b", 1, 5, true);
  EXPECT_EQ(load_values(j, r)["k"], 1);
  EXPECT_EQ(r[0].value, s[0].value);
  EXPECT_EQ(r[1].value, s[1].value);
  ParamStore<double> wrong;
  wrong.add("W", 5, 3);
  wrong.add("b", 1, 5, true);
  try {
    load_values(j, wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(Rng, IndexIsInRangeAndShuffleIsPermutation) {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.index(7), 7u);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_NE(v, sorted);
}

}  // namespace
}  // namespace funqg::nn
