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

#ifndef FUNQG_NN_PARAM_STORE_HPP
#define FUNQG_NN_PARAM_STORE_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "funqg/error.hpp"
#include "funqg/graph.hpp"
#include "funqg/nn/random.hpp"

namespace funqg::nn {

template <typename Scalar>
struct Parameter {
  std::string name;
  RowMatrix<Scalar> value;
  RowMatrix<Scalar> grad;
  RowMatrix<Scalar> m;  // Adam first moment
  RowMatrix<Scalar> v;  // Adam second moment
  bool is_bias = false;
};

template <typename Scalar>
class ParamStore {
 public:
  int add(std::string name, Eigen::Index rows, Eigen::Index cols, bool is_bias = false) {
    if (find(name) >= 0) throw Error(ErrorCode::kBadConfig, "duplicate parameter " + name);
    Parameter<Scalar> p;
    p.name = std::move(name);
    p.value = RowMatrix<Scalar>::Zero(rows, cols);
    p.grad = p.m = p.v = p.value;
    p.is_bias = is_bias;
    params_.push_back(std::move(p));
    return static_cast<int>(params_.size()) - 1;
  }

  /// Index of `name`, or -1.
  int find(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
      if (params_[i].name == name) return i;
    }
    return -1;
  }
  int index(const std::string& name) const {
    const int i = find(name);
    if (i < 0) throw Error(ErrorCode::kShapeMismatch, "no parameter named " + name);
    return i;
  }

  int size() const { return static_cast<int>(params_.size()); }
  Parameter<Scalar>& operator[](int i) { return params_[i]; }
  const Parameter<Scalar>& operator[](int i) const { return params_[i]; }
  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

  long count() const {
    long n = 0;
    for (const auto& p : params_) n += static_cast<long>(p.value.size());
    return n;
  }

  void zero_grad() {
    for (auto& p : params_) p.grad.setZero();
  }

  long step = 0;  // Adam steps taken

 private:
  std::vector<Parameter<Scalar>> params_;
};

/// Uniform Glorot init for weights (rows = fan out, cols = fan in); zero biases.
template <typename Scalar>
void glorot_init(ParamStore<Scalar>& store, Rng& rng) {
  for (auto& p : store) {
    if (p.is_bias) {
      p.value.setZero();
      continue;
    }
    const double limit = std::sqrt(6.0 / static_cast<double>(p.value.rows() + p.value.cols()));
    for (Eigen::Index i = 0; i < p.value.size(); ++i) {
      p.value.data()[i] = static_cast<Scalar>(rng.uniform(-limit, limit));
    }
  }
}

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// One bias-corrected Adam update of every parameter; clears gradients.
template <typename Scalar>
void adam_step(ParamStore<Scalar>& store, const AdamConfig& cfg) {
  ++store.step;
  const double t = static_cast<double>(store.step);
  const Scalar c1 = static_cast<Scalar>(1.0 - std::pow(cfg.beta1, t));
  const Scalar c2 = static_cast<Scalar>(1.0 - std::pow(cfg.beta2, t));
  const Scalar b1 = static_cast<Scalar>(cfg.beta1);
  const Scalar b2 = static_cast<Scalar>(cfg.beta2);
  for (auto& p : store) {
    p.m = b1 * p.m + (Scalar(1) - b1) * p.grad;
    p.v = b2 * p.v + (Scalar(1) - b2) * p.grad.cwiseProduct(p.grad);
    const auto m_hat = p.m / c1;
    const auto v_hat = p.v / c2;
    p.value.array() -= Scalar(cfg.lr) * m_hat.array() /
                       (v_hat.array().sqrt() + static_cast<Scalar>(cfg.eps));
    p.grad.setZero();
  }
}

/// Rescales weight rows whose Euclidean norm exceeds c to norm c. Biases are
/// left alone; c = infinity disables the constraint.
template <typename Scalar>
void max_norm(ParamStore<Scalar>& store, double c) {
  if (!(c > 0.0)) throw Error(ErrorCode::kBadConfig, "max-norm bound must be positive");
  if (std::isinf(c)) return;
  for (auto& p : store) {
    if (p.is_bias) continue;
    for (Eigen::Index r = 0; r < p.value.rows(); ++r) {
      const Scalar norm = p.value.row(r).norm();
      // A row rescaled once may land an ulp above c; leave it there.
      if (norm > Scalar(c) * (Scalar(1) + 8 * std::numeric_limits<Scalar>::epsilon())) {
        p.value.row(r) *= Scalar(c) / norm;
      }
    }
  }
}

}  // namespace funqg::nn

#endif  // FUNQG_NN_PARAM_STORE_HPP
