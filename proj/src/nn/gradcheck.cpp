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

#include "funqg/nn/gradcheck.hpp"

#include <random>

#include "funqg/models.hpp"
#include "funqg/nn/ops.hpp"

namespace funqg::nn {
namespace {

constexpr double kOpTolerance = 1e-6;
constexpr double kModelTolerance = 1e-4;

RowMatrix<double> random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  RowMatrix<double> m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-1.0, 1.0);
  return m;
}

/// Entries pushed away from zero so relu kinks are never within a step.
RowMatrix<double> away_from_zero(Rng& rng, Eigen::Index r, Eigen::Index c) {
  RowMatrix<double> m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double mag = rng.uniform(0.1, 1.0);
    m.data()[i] = rng.uniform() < 0.5 ? -mag : mag;
  }
  return m;
}

FeatureGraph random_graph(Rng& rng, int nodes, int node_width, int edge_width) {
  FeatureGraph g;
  g.node_features = random_matrix(rng, nodes, node_width);
  for (int v = 1; v < nodes; ++v) g.edges.push_back({static_cast<int>(rng.index(v)), v});
  if (nodes > 3) g.edges.push_back({0, nodes - 1});
  g.edge_features = random_matrix(rng, static_cast<int>(g.edges.size()), edge_width);
  return g;
}

}  // namespace

std::vector<GradcheckResult> run_gradcheck_suite(std::uint64_t seed, int model_instances) {
  Rng rng(seed);
  std::vector<GradcheckResult> out;
  auto check = [&](const std::string& name, ParamStore<double> store, const LossFn& fn,
                   double tol) {
    out.push_back({name, gradient_error(store, fn), tol});
  };
  auto store_of = [](std::vector<RowMatrix<double>> values) {
    ParamStore<double> s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      s.add("p" + std::to_string(i), values[i].rows(), values[i].cols());
      s[static_cast<int>(i)].value = values[i];
    }
    return s;
  };
  const RowMatrix<double> target = random_matrix(rng, 3, 2);

  check("matmul", store_of({random_matrix(rng, 3, 4), random_matrix(rng, 4, 2)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return mse(t, matmul(t, t.parameter(s, 0), t.parameter(s, 1)), target);
        },
        kOpTolerance);
  check("matmul_nt", store_of({random_matrix(rng, 3, 4), random_matrix(rng, 2, 4)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return mse(t, matmul_nt(t, t.parameter(s, 0), t.parameter(s, 1)), target);
        },
        kOpTolerance);
  check("add", store_of({random_matrix(rng, 3, 2), random_matrix(rng, 3, 2)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return mse(t, add(t, t.parameter(s, 0), t.parameter(s, 1)), target);
        },
        kOpTolerance);
  check("add_bias", store_of({random_matrix(rng, 3, 2), random_matrix(rng, 1, 2)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return mse(t, add_bias(t, t.parameter(s, 0), t.parameter(s, 1)), target);
        },
        kOpTolerance);
  check("relu", store_of({away_from_zero(rng, 3, 2)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return mse(t, relu(t, t.parameter(s, 0)), target);
        },
        kOpTolerance);
  check("concat_cols", store_of({random_matrix(rng, 3, 1), random_matrix(rng, 3, 1)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return mse(t, concat_cols(t, t.parameter(s, 0), t.parameter(s, 1)), target);
        },
        kOpTolerance);
  const std::vector<int> ids{0, 2, 1, 0, 2};
  check("segment_sum", store_of({random_matrix(rng, 5, 2)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return mse(t, segment_sum(t, t.parameter(s, 0), ids, 3), target);
        },
        kOpTolerance);
  check("segment_mean", store_of({random_matrix(rng, 5, 2)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return mse(t, segment_mean(t, t.parameter(s, 0), ids, 3), target);
        },
        kOpTolerance);
  check("row_select", store_of({random_matrix(rng, 2, 2)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return mse(t, row_select(t, t.parameter(s, 0), {1, 0, 1}), target);
        },
        kOpTolerance);
  const std::uint64_t mask_seed = rng.next();
  check("dropout", store_of({random_matrix(rng, 3, 2)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          Rng local(mask_seed);
          return mse(t, dropout(t, t.parameter(s, 0), 0.4, local, true), target);
        },
        kOpTolerance);
  RowMatrix<double> labels(3, 2), mask(3, 2);
  labels << 1, 0, 0, 1, 1, 1;
  mask << 1, 1, 0, 1, 1, 0;
  check("masked_bce", store_of({random_matrix(rng, 3, 2)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return masked_bce(t, t.parameter(s, 0), labels, mask);
        },
        kOpTolerance);
  check("masked_mse", store_of({random_matrix(rng, 3, 2)}),
        [&](Tape<double>& t, ParamStore<double>& s) {
          return masked_mse(t, t.parameter(s, 0), target, mask);
        },
        kOpTolerance);

  for (int k = 0; k < model_instances; ++k) {
    ModelConfig cfg;
    cfg.architecture = k % 2 == 0 ? Architecture::kDMPNN : Architecture::kMPNN;
    cfg.hidden = 3 + static_cast<int>(rng.index(4));
    cfg.steps = 1 + static_cast<int>(rng.index(3));
    cfg.ffn_hidden = 2 + static_cast<int>(rng.index(4));
    cfg.node_width = 2 + static_cast<int>(rng.index(4));
    cfg.edge_width = 1 + static_cast<int>(rng.index(3));
    cfg.outputs = 1 + static_cast<int>(rng.index(2));
    cfg.readout = rng.uniform() < 0.5 ? Readout::kMean : Readout::kSum;
    cfg.dropout = rng.uniform() < 0.5 ? 0.0 : 0.2;
    const bool classify = k % 4 < 2;

    std::vector<FeatureGraph> graphs{
        random_graph(rng, 2 + static_cast<int>(rng.index(4)), cfg.node_width, cfg.edge_width),
        random_graph(rng, 1 + static_cast<int>(rng.index(5)), cfg.node_width, cfg.edge_width)};
    const GraphBatch batch = make_batch(graphs);
    Rng init(rng.next());
    ParamStore<double> store = init_params<double>(cfg, init);
    // Zero biases put pre-activations exactly on the relu kink whenever a
    // layer's input row is all zero; check at a generic point instead.
    for (auto& p : store) {
      if (p.is_bias) p.value = random_matrix(rng, p.value.rows(), p.value.cols());
    }
    RowMatrix<double> y = random_matrix(rng, 2, cfg.outputs);
    if (classify) y = (y.array() > 0.0).cast<double>().matrix();
    const RowMatrix<double> all = RowMatrix<double>::Ones(2, cfg.outputs);
    const std::uint64_t drop_seed = rng.next();
    const LossFn loss = [&, classify](Tape<double>& t, ParamStore<double>& s) {
      Rng local(drop_seed);
      const Var out = forward(t, s, batch, cfg, local, true);
      return classify ? masked_bce(t, out, y, all) : masked_mse(t, out, y, all);
    };
    check(std::string(to_string(cfg.architecture)) + " model #" + std::to_string(k), std::move(store),
          loss, kModelTolerance);
  }
  return out;
}

}  // namespace funqg::nn
