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

// Dense products with a fixed summation order. Each output element is
// accumulated over the inner dimension from first to last, independent of
// how many rows the operands have, so a row's result does not depend on the
// rest of the batch.

#ifndef FUNQG_NN_KERNELS_HPP
#define FUNQG_NN_KERNELS_HPP

#include "funqg/graph.hpp"

namespace funqg::nn {

/// C = A * B.
template <typename Scalar>
RowMatrix<Scalar> gemm_nn(const RowMatrix<Scalar>& a, const RowMatrix<Scalar>& b) {
  RowMatrix<Scalar> c = RowMatrix<Scalar>::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index p = 0; p < a.cols(); ++p) {
      const Scalar x = a(i, p);
      if (x == Scalar(0)) continue;
      c.row(i) += x * b.row(p);
    }
  }
  return c;
}

/// C = A * B^T.
template <typename Scalar>
RowMatrix<Scalar> gemm_nt(const RowMatrix<Scalar>& a, const RowMatrix<Scalar>& b) {
  const RowMatrix<Scalar> bt = b.transpose();
  return gemm_nn<Scalar>(a, bt);
}

/// C = A^T * B.
template <typename Scalar>
RowMatrix<Scalar> gemm_tn(const RowMatrix<Scalar>& a, const RowMatrix<Scalar>& b) {
  RowMatrix<Scalar> c = RowMatrix<Scalar>::Zero(a.cols(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index p = 0; p < a.cols(); ++p) {
      const Scalar x = a(i, p);
      if (x == Scalar(0)) continue;
      c.row(p) += x * b.row(i);
    }
  }
  return c;
}

}  // namespace funqg::nn

#endif  // FUNQG_NN_KERNELS_HPP
