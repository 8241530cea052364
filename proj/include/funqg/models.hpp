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

// MPNN and DMPNN message passing over batches of feature graphs, mean or sum
// readout, and a two-hidden-layer feed-forward head.
//
// Parameter names and shapes (h hidden, n node width, e edge width, f head
// width, k outputs):
//   mpnn   W_i h x n        W_m h x (h + e)   W_o h x (h + n)
//   dmpnn  W_i h x (n + e)  W_m h x h         W_o h x (h + n)
//   head   ffn.W1 f x h, ffn.b1, ffn.W2 f x f, ffn.b2, ffn.W3 k x f, ffn.b3

#ifndef FUNQG_MODELS_HPP
#define FUNQG_MODELS_HPP

#include <span>
#include <string>
#include <vector>

#include "funqg/error.hpp"
#include "funqg/graph.hpp"
#include "funqg/nn/ops.hpp"
#include "funqg/nn/param_store.hpp"
#include "funqg/nn/random.hpp"
#include "funqg/nn/tape.hpp"

namespace funqg {

/// Disjoint union of graphs. Undirected edge e of the batch becomes arcs 2e
/// (u -> v) and 2e + 1 (v -> u), so the reverse of arc a is a ^ 1.
struct GraphBatch {
  FeatureMatrix node_features;
  FeatureMatrix arc_features;
  std::vector<int> arc_source;
  std::vector<int> arc_target;
  std::vector<int> node_graph;
  int num_graphs = 0;

  // Arcs (k -> v) feeding arc (v -> w), excluding (w -> v), flattened in arc
  // order; exclusive_owner[i] is the arc that exclusive_arcs[i] feeds.
  std::vector<int> exclusive_arcs;
  std::vector<int> exclusive_owner;

  int num_nodes() const { return static_cast<int>(node_features.rows()); }
  int num_arcs() const { return static_cast<int>(arc_source.size()); }
  static int reverse(int arc) { return arc ^ 1; }
};

/// Throws kShapeMismatch if feature widths differ between graphs.
GraphBatch make_batch(std::span<const FeatureGraph* const> graphs);
GraphBatch make_batch(const std::vector<FeatureGraph>& graphs);

enum class Architecture { kMPNN, kDMPNN };
enum class Readout { kMean, kSum };

std::string_view to_string(Architecture a);
Architecture parse_architecture(std::string_view s);

struct ModelConfig {
  Architecture architecture = Architecture::kDMPNN;
  int hidden = 300;      // h
  int steps = 3;         // T
  int ffn_hidden = 0;    // f; 0 means f = h
  double dropout = 0.0;
  Readout readout = Readout::kMean;
  int node_width = 0;    // n_i
  int edge_width = 0;    // e_i
  int outputs = 1;

  int head_width() const { return ffn_hidden > 0 ? ffn_hidden : hidden; }
  /// Throws kBadConfig on a non-positive size or dropout outside [0, 1).
  void validate() const;
};

/// Closed-form number of learnable scalars.
long count_parameters(const ModelConfig& cfg);

/// Registers every parameter of `cfg` (weights Glorot-uniform, biases zero).
template <typename Scalar>
nn::ParamStore<Scalar> init_params(const ModelConfig& cfg, nn::Rng& rng) {
  cfg.validate();
  const int h = cfg.hidden, n = cfg.node_width, e = cfg.edge_width, f = cfg.head_width();
  nn::ParamStore<Scalar> store;
  if (cfg.architecture == Architecture::kMPNN) {
    store.add("W_i", h, n);
    store.add("W_m", h, h + e);
  } else {
    store.add("W_i", h, n + e);
    store.add("W_m", h, h);
  }
  store.add("W_o", h, h + n);
  store.add("ffn.W1", f, h);
  store.add("ffn.b1", 1, f, true);
  store.add("ffn.W2", f, f);
  store.add("ffn.b2", 1, f, true);
  store.add("ffn.W3", cfg.outputs, f);
  store.add("ffn.b3", 1, cfg.outputs, true);
  nn::glorot_init(store, rng);
  return store;
}

namespace detail {

template <typename Scalar>
nn::Var param(nn::Tape<Scalar>& t, nn::ParamStore<Scalar>& store, const char* name) {
  return t.parameter(store, store.index(name));
}

inline void check_widths(const GraphBatch& b, const ModelConfig& cfg) {
  if (b.node_features.cols() != cfg.node_width || b.arc_features.cols() != cfg.edge_width) {
    throw Error(ErrorCode::kShapeMismatch,
                "batch widths " + std::to_string(b.node_features.cols()) + "/" +
                    std::to_string(b.arc_features.cols()) + " do not match model " +
                    std::to_string(cfg.node_width) + "/" + std::to_string(cfg.edge_width));
  }
}

}  // namespace detail

/// Final node states h_v of either architecture (one row per batch node).
template <typename Scalar>
nn::Var node_states(nn::Tape<Scalar>& t, nn::ParamStore<Scalar>& store, const GraphBatch& b,
                    const ModelConfig& cfg) {
  detail::check_widths(b, cfg);
  const int n = b.num_nodes();
  const nn::Var x = t.constant(b.node_features.template cast<Scalar>());
  const nn::Var e = t.constant(b.arc_features.template cast<Scalar>());
  const nn::Var w_i = detail::param(t, store, "W_i");
  const nn::Var w_m = detail::param(t, store, "W_m");
  const nn::Var w_o = detail::param(t, store, "W_o");

  nn::Var m;
  if (cfg.architecture == Architecture::kMPNN) {
    const nn::Var h0 = nn::matmul_nt(t, x, w_i);
    nn::Var h = h0;
    for (int step = 0; step < cfg.steps; ++step) {
      const nn::Var msg = nn::concat_cols(t, nn::row_select(t, h, b.arc_source), e);
      const nn::Var agg = nn::segment_sum(t, msg, b.arc_target, n);
      h = nn::relu(t, nn::add(t, h0, nn::matmul_nt(t, agg, w_m)));
    }
    m = nn::segment_sum(t, nn::row_select(t, h, b.arc_source), b.arc_target, n);
  } else {
    const nn::Var init = nn::concat_cols(t, nn::row_select(t, x, b.arc_source), e);
    const nn::Var h0 = nn::relu(t, nn::matmul_nt(t, init, w_i));
    nn::Var h = h0;
    for (int step = 0; step < cfg.steps; ++step) {
      const nn::Var incoming = nn::row_select(t, h, b.exclusive_arcs);
      const nn::Var agg = nn::segment_sum(t, incoming, b.exclusive_owner, b.num_arcs());
      h = nn::relu(t, nn::add(t, h0, nn::matmul_nt(t, agg, w_m)));
    }
    m = nn::segment_sum(t, h, b.arc_source, n);
  }
  return nn::relu(t, nn::matmul_nt(t, nn::concat_cols(t, x, m), w_o));
}

/// Pools node states per graph and applies the head. Returns logits (or raw
/// regression outputs), one row per graph.
template <typename Scalar>
nn::Var readout_ffn(nn::Tape<Scalar>& t, nn::ParamStore<Scalar>& store, nn::Var states,
                    const std::vector<int>& node_graph, int num_graphs, const ModelConfig& cfg,
                    nn::Rng& rng, bool training) {
  const nn::Var pooled = cfg.readout == Readout::kMean
                             ? nn::segment_mean(t, states, node_graph, num_graphs)
                             : nn::segment_sum(t, states, node_graph, num_graphs);
  if (cfg.readout == Readout::kSum) {
    std::vector<int> seen(num_graphs, 0);
    for (int g : node_graph) seen[g] = 1;
    for (int g = 0; g < num_graphs; ++g) {
      if (!seen[g]) throw Error(ErrorCode::kEmptyGraph, "graph " + std::to_string(g) + " has no nodes");
    }
  }
  auto layer = [&](nn::Var in, const char* w, const char* bias) {
    return nn::add_bias(t, nn::matmul_nt(t, in, detail::param(t, store, w)),
                        detail::param(t, store, bias));
  };
  nn::Var z = nn::dropout(t, nn::relu(t, layer(pooled, "ffn.W1", "ffn.b1")), cfg.dropout, rng, training);
  z = nn::dropout(t, nn::relu(t, layer(z, "ffn.W2", "ffn.b2")), cfg.dropout, rng, training);
  return layer(z, "ffn.W3", "ffn.b3");
}

/// Whole model: node states, dropout on them, readout and head.
template <typename Scalar>
nn::Var forward(nn::Tape<Scalar>& t, nn::ParamStore<Scalar>& store, const GraphBatch& b,
                const ModelConfig& cfg, nn::Rng& rng, bool training) {
  nn::Var h = node_states(t, store, b, cfg);
  h = nn::dropout(t, h, cfg.dropout, rng, training);
  return readout_ffn(t, store, h, b.node_graph, b.num_graphs, cfg, rng, training);
}

/// Evaluation-mode predictions (no dropout).
template <typename Scalar>
RowMatrix<Scalar> predict(nn::ParamStore<Scalar>& store, const GraphBatch& b, const ModelConfig& cfg) {
  nn::Tape<Scalar> t;
  nn::Rng unused(0);
  return t.value(forward(t, store, b, cfg, unused, false));
}

}  // namespace funqg

#endif  // FUNQG_MODELS_HPP
