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

// Straightforward per-node / per-arc evaluation of both architectures with
// explicit neighbour loops, used as an independent reference.

#ifndef FUNQG_TESTS_REFERENCE_GNN_HPP
#define FUNQG_TESTS_REFERENCE_GNN_HPP

#include <map>
#include <utility>
#include <vector>

#include "funqg/models.hpp"

namespace funqg::testing {

using Vec = Eigen::VectorXd;

inline Vec relu(const Vec& v) { return v.cwiseMax(0.0); }
inline Vec cat(const Vec& a, const Vec& b) {
  Vec out(a.size() + b.size());
  out << a, b;
  return out;
}

/// Predictions for one graph (no dropout).
inline Eigen::VectorXd reference_predict(const FeatureGraph& g, const nn::ParamStore<double>& s,
                                         const ModelConfig& cfg) {
  const int n = g.num_nodes();
  auto W = [&](const char* name) -> Eigen::MatrixXd { return s[s.index(name)].value; };
  std::vector<std::vector<int>> nbr(n);
  std::map<std::pair<int, int>, Vec> bond;  // (v, w) -> e_vw
  for (int e = 0; e < g.num_edges(); ++e) {
    const int u = g.edges[e].u, v = g.edges[e].v;
    nbr[u].push_back(v);
    nbr[v].push_back(u);
    bond[{u, v}] = bond[{v, u}] = g.edge_features.row(e).transpose();
  }
  auto x = [&](int v) -> Vec { return g.node_features.row(v).transpose(); };
  const Eigen::MatrixXd Wi = W("W_i"), Wm = W("W_m"), Wo = W("W_o");
  const int h = cfg.hidden;
  std::vector<Vec> node_state(n);

  if (cfg.architecture == Architecture::kMPNN) {
    std::vector<Vec> h0(n), cur(n);
    for (int v = 0; v < n; ++v) cur[v] = h0[v] = Wi * x(v);
    for (int t = 0; t < cfg.steps; ++t) {
      std::vector<Vec> next(n);
      for (int v = 0; v < n; ++v) {
        Vec m = Vec::Zero(h + cfg.edge_width);
        for (int w : nbr[v]) m += cat(cur[w], bond[{w, v}]);
        next[v] = relu(h0[v] + Wm * m);
      }
      cur = next;
    }
    for (int v = 0; v < n; ++v) {
      Vec m = Vec::Zero(h);
      for (int w : nbr[v]) m += cur[w];
      node_state[v] = relu(Wo * cat(x(v), m));
    }
  } else {
    std::map<std::pair<int, int>, Vec> h0, cur;
    for (int v = 0; v < n; ++v) {
      for (int w : nbr[v]) cur[{v, w}] = h0[{v, w}] = relu(Wi * cat(x(v), bond[{v, w}]));
    }
    for (int t = 0; t < cfg.steps; ++t) {
      std::map<std::pair<int, int>, Vec> next;
      for (const auto& [arc, state] : cur) {
        const auto [v, w] = arc;
        Vec m = Vec::Zero(h);
        for (int k : nbr[v]) {
          if (k != w) m += cur[{k, v}];
        }
        next[arc] = relu(h0[arc] + Wm * m);
      }
      cur = next;
    }
    for (int v = 0; v < n; ++v) {
      Vec m = Vec::Zero(h);
      for (int w : nbr[v]) m += cur[{v, w}];
      node_state[v] = relu(Wo * cat(x(v), m));
    }
  }

  Vec pooled = Vec::Zero(h);
  for (const Vec& s_v : node_state) pooled += s_v;
  if (cfg.readout == Readout::kMean) pooled /= n;
  auto bias = [&](const char* name) -> Vec { return s[s.index(name)].value.row(0).transpose(); };
  const Vec z1 = relu(W("ffn.W1") * pooled + bias("ffn.b1"));
  const Vec z2 = relu(W("ffn.W2") * z1 + bias("ffn.b2"));
  return W("ffn.W3") * z2 + bias("ffn.b3");
}

}  // namespace funqg::testing

#endif  // FUNQG_TESTS_REFERENCE_GNN_HPP
