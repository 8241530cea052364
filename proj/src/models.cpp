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

#include "funqg/models.hpp"

namespace funqg {

GraphBatch make_batch(std::span<const FeatureGraph* const> graphs) {
  GraphBatch b;
  b.num_graphs = static_cast<int>(graphs.size());
  if (graphs.empty()) throw Error(ErrorCode::kEmptyDataset, "empty batch");
  const int node_width = graphs.front()->node_width();
  const int edge_width = graphs.front()->edge_width();
  int nodes = 0, edges = 0;
  for (const FeatureGraph* g : graphs) {
    if (g->node_width() != node_width || (g->num_edges() > 0 && g->edge_width() != edge_width)) {
      throw Error(ErrorCode::kShapeMismatch, "graphs in a batch differ in feature width");
    }
    nodes += g->num_nodes();
    edges += g->num_edges();
  }
  b.node_features.resize(nodes, node_width);
  b.arc_features.resize(2 * edges, edge_width);
  b.arc_source.reserve(2 * edges);
  b.arc_target.reserve(2 * edges);
  b.node_graph.reserve(nodes);

  int node_offset = 0, arc = 0;
  for (int gi = 0; gi < b.num_graphs; ++gi) {
    const FeatureGraph& g = *graphs[gi];
    b.node_features.middleRows(node_offset, g.num_nodes()) = g.node_features;
    for (int v = 0; v < g.num_nodes(); ++v) b.node_graph.push_back(gi);
    for (int e = 0; e < g.num_edges(); ++e) {
      const int u = node_offset + g.edges[e].u;
      const int v = node_offset + g.edges[e].v;
      b.arc_source.push_back(u);
      b.arc_target.push_back(v);
      b.arc_source.push_back(v);
      b.arc_target.push_back(u);
      b.arc_features.row(arc++) = g.edge_features.row(e);
      b.arc_features.row(arc++) = g.edge_features.row(e);
    }
    node_offset += g.num_nodes();
  }

  std::vector<std::vector<int>> into(nodes);
  for (int a = 0; a < b.num_arcs(); ++a) into[b.arc_target[a]].push_back(a);
  for (int a = 0; a < b.num_arcs(); ++a) {
    for (int k : into[b.arc_source[a]]) {
      if (k == GraphBatch::reverse(a)) continue;
      b.exclusive_arcs.push_back(k);
      b.exclusive_owner.push_back(a);
    }
  }
  return b;
}

GraphBatch make_batch(const std::vector<FeatureGraph>& graphs) {
  std::vector<const FeatureGraph*> ptrs;
  ptrs.reserve(graphs.size());
  for (const auto& g : graphs) ptrs.push_back(&g);
  return make_batch(ptrs);
}

std::string_view to_string(Architecture a) {
  return a == Architecture::kMPNN ? "mpnn" : "dmpnn";
}

Architecture parse_architecture(std::string_view s) {
  if (s == "mpnn") return Architecture::kMPNN;
  if (s == "dmpnn") return Architecture::kDMPNN;
  throw Error(ErrorCode::kBadConfig, "unknown architecture '" + std::string(s) + "'");
}

void ModelConfig::validate() const {
  if (hidden < 1 || steps < 1 || outputs < 1 || ffn_hidden < 0 || node_width < 1 ||
      edge_width < 0) {
    throw Error(ErrorCode::kBadConfig, "model sizes must be positive");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) throw Error(ErrorCode::kBadConfig, "dropout must be in [0, 1)");
}

long count_parameters(const ModelConfig& cfg) {
  const long h = cfg.hidden, n = cfg.node_width, e = cfg.edge_width, f = cfg.head_width(),
             k = cfg.outputs;
  const long core = cfg.architecture == Architecture::kDMPNN ? h * (n + e) + h * h + h * (h + n)
                                                            : h * n + h * (h + e) + h * (h + n);
  return core + h * f + f + f * f + f + f * k + k;
}

}  // namespace funqg
