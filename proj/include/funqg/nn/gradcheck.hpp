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

#ifndef FUNQG_NN_GRADCHECK_HPP
#define FUNQG_NN_GRADCHECK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "funqg/nn/param_store.hpp"
#include "funqg/nn/tape.hpp"

namespace funqg::nn {

/// Builds a scalar loss from the parameters of a store on a fresh tape.
using LossFn = std::function<Var(Tape<double>&, ParamStore<double>&)>;

/// max over entries of |a - n| / max(|a|, |n|, floor) between the tape
/// gradient and central differences with step `step`.
inline double gradient_error(ParamStore<double>& store, const LossFn& loss, double step = 1e-5,
                             double floor = 1e-6) {
  store.zero_grad();
  {
    Tape<double> t;
    t.backward(loss(t, store));
  }
  auto evaluate = [&] {
    Tape<double> t;
    return t.value(loss(t, store))(0, 0);
  };
  double worst = 0.0;
  for (auto& p : store) {
    for (Eigen::Index i = 0; i < p.value.size(); ++i) {
      double& x = p.value.data()[i];
      const double saved = x;
      x = saved + step;
      const double up = evaluate();
      x = saved - step;
      const double down = evaluate();
      x = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double analytic = p.grad.data()[i];
      const double scale = std::max({std::abs(analytic), std::abs(numeric), floor});
      worst = std::max(worst, std::abs(analytic - numeric) / scale);
    }
  }
  store.zero_grad();
  return worst;
}

struct GradcheckResult {
  std::string name;
  double max_relative_error = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_relative_error < tolerance; }
};

/// Every differentiable op on random inputs, then `model_instances` random
/// MPNN/DMPNN models on two-graph batches with both loss types.
std::vector<GradcheckResult> run_gradcheck_suite(std::uint64_t seed, int model_instances);

}  // namespace funqg::nn

#endif  // FUNQG_NN_GRADCHECK_HPP
