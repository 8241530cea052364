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

#ifndef FUNQG_NN_OPS_HPP
#define FUNQG_NN_OPS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "funqg/error.hpp"
#include "funqg/nn/kernels.hpp"
#include "funqg/nn/random.hpp"
#include "funqg/nn/tape.hpp"

namespace funqg::nn {

/// Non-deduced matrix argument, so Eigen expressions convert implicitly.
template <typename Scalar>
using Dense = std::type_identity_t<RowMatrix<Scalar>>;

namespace detail {

inline void require(bool ok, const char* op, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kShapeMismatch, std::string(op) + ": " + what);
}

inline std::string shape(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace detail

/// a * b.
template <typename Scalar>
Var matmul(Tape<Scalar>& t, Var a, Var b) {
  const auto& A = t.value(a);
  const auto& B = t.value(b);
  detail::require(A.cols() == B.rows(), "matmul",
                  detail::shape(A.rows(), A.cols()) + " * " + detail::shape(B.rows(), B.cols()));
  return t.push(gemm_nn<Scalar>(A, B),
                [a, b](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  t.accumulate(a, gemm_nt<Scalar>(g, t.value(b)));
                  t.accumulate(b, gemm_tn<Scalar>(t.value(a), g));
                },
                "matmul");
}

/// a * w^T, the layout of a weight matrix stored as (out x in).
template <typename Scalar>
Var matmul_nt(Tape<Scalar>& t, Var a, Var w) {
  const auto& A = t.value(a);
  const auto& W = t.value(w);
  detail::require(A.cols() == W.cols(), "matmul_nt",
                  detail::shape(A.rows(), A.cols()) + " * (" + detail::shape(W.rows(), W.cols()) +
                      ")^T");
  return t.push(gemm_nt<Scalar>(A, W),
                [a, w](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  t.accumulate(a, gemm_nn<Scalar>(g, t.value(w)));
                  t.accumulate(w, gemm_tn<Scalar>(g, t.value(a)));
                },
                "matmul_nt");
}

template <typename Scalar>
Var add(Tape<Scalar>& t, Var a, Var b) {
  const auto& A = t.value(a);
  const auto& B = t.value(b);
  detail::require(A.rows() == B.rows() && A.cols() == B.cols(), "add",
                  detail::shape(A.rows(), A.cols()) + " + " + detail::shape(B.rows(), B.cols()));
  return t.push(A + B,
                [a, b](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  t.accumulate(a, g);
                  t.accumulate(b, g);
                },
                "add");
}

/// a + bias, with the 1 x c bias broadcast over rows.
template <typename Scalar>
Var add_bias(Tape<Scalar>& t, Var a, Var bias) {
  const auto& A = t.value(a);
  const auto& B = t.value(bias);
  detail::require(B.rows() == 1 && B.cols() == A.cols(), "add_bias",
                  detail::shape(A.rows(), A.cols()) + " + " + detail::shape(B.rows(), B.cols()));
  RowMatrix<Scalar> out = A;
  out.rowwise() += B.row(0);
  return t.push(std::move(out),
                [a, bias](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  t.accumulate(a, g);
                  RowMatrix<Scalar> gb = RowMatrix<Scalar>::Zero(1, g.cols());
                  for (Eigen::Index r = 0; r < g.rows(); ++r) gb.row(0) += g.row(r);
                  t.accumulate(bias, gb);
                },
                "add_bias");
}

template <typename Scalar>
Var relu(Tape<Scalar>& t, Var a) {
  RowMatrix<Scalar> out = t.value(a).cwiseMax(Scalar(0));
  return t.push(std::move(out),
                [a](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  const auto& x = t.value(a);
                  t.accumulate(a, (x.array() > Scalar(0)).select(g, Scalar(0)).matrix());
                },
                "relu");
}

/// [a | b] with equal row counts.
template <typename Scalar>
Var concat_cols(Tape<Scalar>& t, Var a, Var b) {
  const auto& A = t.value(a);
  const auto& B = t.value(b);
  detail::require(A.rows() == B.rows(), "concat_cols",
                  detail::shape(A.rows(), A.cols()) + " | " + detail::shape(B.rows(), B.cols()));
  RowMatrix<Scalar> out(A.rows(), A.cols() + B.cols());
  out.leftCols(A.cols()) = A;
  out.rightCols(B.cols()) = B;
  const Eigen::Index split = A.cols();
  return t.push(std::move(out),
                [a, b, split](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  t.accumulate(a, g.leftCols(split));
                  t.accumulate(b, g.rightCols(g.cols() - split));
                },
                "concat_cols");
}

/// out[s] = sum of values rows r with ids[r] == s, added in row order.
template <typename Scalar>
Var segment_sum(Tape<Scalar>& t, Var values, const std::vector<int>& ids, int num_segments) {
  const auto& V = t.value(values);
  detail::require(static_cast<Eigen::Index>(ids.size()) == V.rows(), "segment_sum",
                  std::to_string(ids.size()) + " ids for " + std::to_string(V.rows()) + " rows");
  RowMatrix<Scalar> out = RowMatrix<Scalar>::Zero(num_segments, V.cols());
  for (Eigen::Index r = 0; r < V.rows(); ++r) {
    detail::require(ids[r] >= 0 && ids[r] < num_segments, "segment_sum", "segment id out of range");
    out.row(ids[r]) += V.row(r);
  }
  return t.push(std::move(out),
                [values, ids](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  RowMatrix<Scalar> gv(static_cast<Eigen::Index>(ids.size()), g.cols());
                  for (std::size_t r = 0; r < ids.size(); ++r) gv.row(r) = g.row(ids[r]);
                  t.accumulate(values, gv);
                },
                "segment_sum");
}

/// Segment means; empty segments throw kEmptyGraph.
template <typename Scalar>
Var segment_mean(Tape<Scalar>& t, Var values, const std::vector<int>& ids, int num_segments) {
  const auto& V = t.value(values);
  detail::require(static_cast<Eigen::Index>(ids.size()) == V.rows(), "segment_mean",
                  std::to_string(ids.size()) + " ids for " + std::to_string(V.rows()) + " rows");
  std::vector<Scalar> count(num_segments, Scalar(0));
  RowMatrix<Scalar> out = RowMatrix<Scalar>::Zero(num_segments, V.cols());
  for (Eigen::Index r = 0; r < V.rows(); ++r) {
    detail::require(ids[r] >= 0 && ids[r] < num_segments, "segment_mean", "segment id out of range");
    out.row(ids[r]) += V.row(r);
    count[ids[r]] += Scalar(1);
  }
  for (int s = 0; s < num_segments; ++s) {
    if (count[s] == Scalar(0)) {
      throw Error(ErrorCode::kEmptyGraph, "segment " + std::to_string(s) + " has no rows");
    }
    out.row(s) /= count[s];
  }
  return t.push(std::move(out),
                [values, ids, count](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  RowMatrix<Scalar> gv(static_cast<Eigen::Index>(ids.size()), g.cols());
                  for (std::size_t r = 0; r < ids.size(); ++r) gv.row(r) = g.row(ids[r]) / count[ids[r]];
                  t.accumulate(values, gv);
                },
                "segment_mean");
}

/// out[i] = values[indices[i]]; the backward pass scatter-adds.
template <typename Scalar>
Var row_select(Tape<Scalar>& t, Var values, const std::vector<int>& indices) {
  const auto& V = t.value(values);
  RowMatrix<Scalar> out(static_cast<Eigen::Index>(indices.size()), V.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    detail::require(indices[i] >= 0 && indices[i] < V.rows(), "row_select", "row out of range");
    out.row(i) = V.row(indices[i]);
  }
  const Eigen::Index rows = V.rows();
  return t.push(std::move(out),
                [values, indices, rows](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  RowMatrix<Scalar> gv = RowMatrix<Scalar>::Zero(rows, g.cols());
                  for (std::size_t i = 0; i < indices.size(); ++i) gv.row(indices[i]) += g.row(i);
                  t.accumulate(values, gv);
                },
                "row_select");
}

/// Inverted dropout. Identity when !training or p == 0.
template <typename Scalar>
Var dropout(Tape<Scalar>& t, Var x, double p, Rng& rng, bool training) {
  if (!(p >= 0.0 && p < 1.0)) throw Error(ErrorCode::kBadConfig, "dropout must be in [0, 1)");
  if (!training || p == 0.0) return x;
  const auto& X = t.value(x);
  const Scalar scale = Scalar(1.0 / (1.0 - p));
  RowMatrix<Scalar> mask(X.rows(), X.cols());
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = rng.uniform() < p ? Scalar(0) : scale;
  }
  RowMatrix<Scalar> out = X.cwiseProduct(mask);
  return t.push(std::move(out),
                [x, mask](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  t.accumulate(x, g.cwiseProduct(mask));
                },
                "dropout");
}

namespace detail {

template <typename Scalar>
Scalar mask_count(const RowMatrix<Scalar>& mask, const char* op) {
  const Scalar n = mask.sum();
  if (n <= Scalar(0)) throw Error(ErrorCode::kAllMasked, std::string(op) + ": every entry masked");
  return n;
}

}  // namespace detail

/// Mean binary cross-entropy over entries with mask 1, in log-sum-exp form.
template <typename Scalar>
Var masked_bce(Tape<Scalar>& t, Var logits, const Dense<Scalar>& targets, const Dense<Scalar>& mask) {
  const auto& X = t.value(logits);
  detail::require(X.rows() == targets.rows() && X.cols() == targets.cols() &&
                      X.rows() == mask.rows() && X.cols() == mask.cols(),
                  "masked_bce", "logits, targets and mask differ in shape");
  const Scalar n = detail::mask_count(mask, "masked_bce");
  Scalar total = 0;
  for (Eigen::Index i = 0; i < X.size(); ++i) {
    if (mask.data()[i] == Scalar(0)) continue;
    const Scalar x = X.data()[i];
    const Scalar y = targets.data()[i];
    total += std::max(x, Scalar(0)) - x * y + std::log1p(std::exp(-std::abs(x)));
  }
  RowMatrix<Scalar> out(1, 1);
  out(0, 0) = total / n;
  if (!std::isfinite(out(0, 0))) throw Error(ErrorCode::kNonFiniteLoss, "classification loss");
  return t.push(std::move(out),
                [logits, targets, mask, n](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  const auto& X = t.value(logits);
                  RowMatrix<Scalar> gx = RowMatrix<Scalar>::Zero(X.rows(), X.cols());
                  for (Eigen::Index i = 0; i < X.size(); ++i) {
                    if (mask.data()[i] == Scalar(0)) continue;
                    const Scalar sig = Scalar(1) / (Scalar(1) + std::exp(-X.data()[i]));
                    gx.data()[i] = g(0, 0) * (sig - targets.data()[i]) / n;
                  }
                  t.accumulate(logits, gx);
                },
                "masked_bce");
}

/// Mean squared error over entries with mask 1.
template <typename Scalar>
Var masked_mse(Tape<Scalar>& t, Var pred, const Dense<Scalar>& targets, const Dense<Scalar>& mask) {
  const auto& P = t.value(pred);
  detail::require(P.rows() == targets.rows() && P.cols() == targets.cols() &&
                      P.rows() == mask.rows() && P.cols() == mask.cols(),
                  "masked_mse", "predictions, targets and mask differ in shape");
  const Scalar n = detail::mask_count(mask, "masked_mse");
  const RowMatrix<Scalar> diff = (P - targets).cwiseProduct(mask);
  RowMatrix<Scalar> out(1, 1);
  out(0, 0) = diff.squaredNorm() / n;
  if (!std::isfinite(out(0, 0))) throw Error(ErrorCode::kNonFiniteLoss, "regression loss");
  return t.push(std::move(out),
                [pred, diff, n](Tape<Scalar>& t, const RowMatrix<Scalar>& g) {
                  t.accumulate(pred, (Scalar(2) * g(0, 0) / n) * diff);
                },
                "masked_mse");
}

template <typename Scalar>
Var mse(Tape<Scalar>& t, Var pred, const Dense<Scalar>& targets) {
  const RowMatrix<Scalar> ones = RowMatrix<Scalar>::Ones(targets.rows(), targets.cols());
  return masked_mse(t, pred, targets, ones);
}

}  // namespace funqg::nn

#endif  // FUNQG_NN_OPS_HPP
