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

#include "funqg/coarsener.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "funqg/error.hpp"
#include "funqg/featurizer.hpp"

namespace funqg {
namespace {

// Group id per node, -1 outside all groups.
std::vector<int> group_labels(int num_nodes, const std::vector<FunctionalGroup>& fgs) {
  std::vector<int> label(num_nodes, -1);
  for (int gi = 0; gi < static_cast<int>(fgs.size()); ++gi) {
    for (int a : fgs[gi].atom_indices) {
      if (a < 0 || a >= num_nodes) {
        throw Error(ErrorCode::kInvalidPartition, "functional group atom out of range");
      }
      if (label[a] >= 0) {
        throw Error(ErrorCode::kOverlappingFGs,
                    "atom " + std::to_string(a) + " in two functional groups");
      }
      label[a] = gi;
    }
  }
  return label;
}

template <typename Rows>
void aggregate_rows(const FeatureMatrix& src, const Rows& rows, Aggregation agg,
                    FeatureMatrix& dst, int dst_row) {
  dst.row(dst_row).setZero();
  for (int r : rows) dst.row(dst_row) += src.row(r);
  if (agg == Aggregation::kMean && !rows.empty()) {
    dst.row(dst_row) /= static_cast<double>(rows.size());
  }
}

std::vector<int> merge_sorted(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

std::vector<int> PartitionSet::block_of(int num_nodes) const {
  std::vector<int> owner(num_nodes, -1);
  for (int b = 0; b < size(); ++b) {
    if (blocks[b].empty()) throw Error(ErrorCode::kInvalidPartition, "empty block");
    for (int v : blocks[b]) {
      if (v < 0 || v >= num_nodes) throw Error(ErrorCode::kInvalidPartition, "node out of range");
      if (owner[v] >= 0) {
        throw Error(ErrorCode::kInvalidPartition, "node " + std::to_string(v) + " in two blocks");
      }
      owner[v] = b;
    }
  }
  for (int v = 0; v < num_nodes; ++v) {
    if (owner[v] < 0) {
      throw Error(ErrorCode::kInvalidPartition, "node " + std::to_string(v) + " uncovered");
    }
  }
  return owner;
}

std::vector<int> compute_cut_edges(const FeatureGraph& g, const std::vector<FunctionalGroup>& fgs) {
  const auto label = group_labels(g.num_nodes(), fgs);
  std::vector<int> cut;
  for (int e = 0; e < g.num_edges(); ++e) {
    const int lu = label[g.edges[e].u];
    const int lv = label[g.edges[e].v];
    if ((lu >= 0 || lv >= 0) && lu != lv) cut.push_back(e);
  }
  return cut;
}

PartitionSet components_partition(const FeatureGraph& g, std::span<const int> cut,
                                  const std::vector<FunctionalGroup>& fgs) {
  std::vector<bool> removed(g.num_edges(), false);
  for (int e : cut) {
    if (e < 0 || e >= g.num_edges()) throw Error(ErrorCode::kInvalidPartition, "cut edge out of range");
    removed[e] = true;
  }
  std::vector<Edge> kept;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!removed[e]) kept.push_back(g.edges[e]);
  }
  const auto comp = component_labels(g.num_nodes(), kept);
  const int num_blocks = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

  PartitionSet p;
  p.blocks.assign(num_blocks, {});
  p.kinds.assign(num_blocks, BlockKind::kCarbon);
  for (int v = 0; v < g.num_nodes(); ++v) p.blocks[comp[v]].push_back(v);

  for (const FunctionalGroup& fg : fgs) {
    if (fg.atom_indices.empty()) throw Error(ErrorCode::kFGNotComponent, "empty group");
    const int block = comp[fg.atom_indices.front()];
    std::vector<int> sorted = fg.atom_indices;
    std::sort(sorted.begin(), sorted.end());
    if (p.blocks[block] != sorted) {
      throw Error(ErrorCode::kFGNotComponent,
                  "group containing atom " + std::to_string(sorted.front()) +
                      " is not a connected component after cutting");
    }
    p.kinds[block] = BlockKind::kFunctionalGroup;
  }
  return p;
}

QuotientGraph quotient(const FeatureGraph& g, const PartitionSet& p, Aggregation node_agg,
                       Aggregation edge_agg) {
  const auto owner = p.block_of(g.num_nodes());
  QuotientGraph q;
  q.node_sources = p.blocks;
  q.graph.node_features.resize(p.size(), g.node_width());
  for (int b = 0; b < p.size(); ++b) {
    aggregate_rows(g.node_features, p.blocks[b], node_agg, q.graph.node_features, b);
  }

  std::map<std::pair<int, int>, std::vector<int>> contracted;
  for (int e = 0; e < g.num_edges(); ++e) {
    int a = owner[g.edges[e].u];
    int b = owner[g.edges[e].v];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    contracted[{a, b}].push_back(e);
  }
  q.graph.edge_features.resize(static_cast<Eigen::Index>(contracted.size()), g.edge_width());
  int row = 0;
  for (const auto& [pair, sources] : contracted) {
    q.graph.edges.push_back({pair.first, pair.second});
    aggregate_rows(g.edge_features, sources, edge_agg, q.graph.edge_features, row++);
    q.edge_sources.push_back(sources);
  }
  return q;
}

PartitionSet funqg_partition(const FeatureGraph& g, const std::vector<FunctionalGroup>& fgs) {
  const auto cut = compute_cut_edges(g, fgs);
  return components_partition(g, cut, fgs);
}

QuotientGraph funqg(const FeatureGraph& g, const std::vector<FunctionalGroup>& fgs,
                    const FunqgOptions& options) {
  const PartitionSet p = funqg_partition(g, fgs);

  // Stage (a): carbon blocks contracted, group atoms kept as singletons.
  PartitionSet carbon_stage;
  for (int b = 0; b < p.size(); ++b) {
    if (p.kinds[b] == BlockKind::kCarbon) {
      carbon_stage.blocks.push_back(p.blocks[b]);
      carbon_stage.kinds.push_back(BlockKind::kCarbon);
    } else {
      for (int v : p.blocks[b]) {
        carbon_stage.blocks.push_back({v});
        carbon_stage.kinds.push_back(BlockKind::kFunctionalGroup);
      }
    }
  }
  std::vector<int> order(carbon_stage.blocks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return carbon_stage.blocks[x].front() < carbon_stage.blocks[y].front();
  });
  PartitionSet stage_a;
  for (int i : order) {
    stage_a.blocks.push_back(carbon_stage.blocks[i]);
    stage_a.kinds.push_back(carbon_stage.kinds[i]);
  }
  const QuotientGraph qa =
      quotient(g, stage_a, options.carbon_aggregation, options.carbon_aggregation);

  // Stage (b): group atoms (now singleton nodes of qa) contracted per group.
  std::vector<int> node_of_atom(g.num_nodes(), -1);
  for (int n = 0; n < qa.num_nodes(); ++n) {
    for (int v : qa.node_sources[n]) node_of_atom[v] = n;
  }
  PartitionSet stage_b;
  std::vector<bool> placed(qa.num_nodes(), false);
  for (int b = 0; b < p.size(); ++b) {
    if (p.kinds[b] != BlockKind::kFunctionalGroup) continue;
    std::vector<int> members;
    for (int v : p.blocks[b]) members.push_back(node_of_atom[v]);
    std::sort(members.begin(), members.end());
    for (int n : members) placed[n] = true;
    stage_b.blocks.push_back(std::move(members));
    stage_b.kinds.push_back(BlockKind::kFunctionalGroup);
  }
  for (int n = 0; n < qa.num_nodes(); ++n) {
    if (!placed[n]) {
      stage_b.blocks.push_back({n});
      stage_b.kinds.push_back(BlockKind::kCarbon);
    }
  }
  std::vector<int> order_b(stage_b.blocks.size());
  for (std::size_t i = 0; i < order_b.size(); ++i) order_b[i] = static_cast<int>(i);
  std::sort(order_b.begin(), order_b.end(), [&](int x, int y) {
    return stage_b.blocks[x].front() < stage_b.blocks[y].front();
  });
  PartitionSet sorted_b;
  for (int i : order_b) {
    sorted_b.blocks.push_back(stage_b.blocks[i]);
    sorted_b.kinds.push_back(stage_b.kinds[i]);
  }
  QuotientGraph qb =
      quotient(qa.graph, sorted_b, options.group_aggregation, options.group_aggregation);

  // Express provenance in terms of the original graph.
  for (auto& sources : qb.node_sources) {
    std::vector<int> atoms;
    for (int n : sources) atoms = merge_sorted(std::move(atoms), qa.node_sources[n]);
    sources = std::move(atoms);
  }
  for (auto& sources : qb.edge_sources) {
    std::vector<int> edges;
    for (int e : sources) edges = merge_sorted(std::move(edges), qa.edge_sources[e]);
    sources = std::move(edges);
  }
  return qb;
}

QuotientGraph funqg(const chem::Molecule& m, const FunqgOptions& options) {
  return funqg(featurize(m), detect_functional_groups(m), options);
}

double abstraction_ratio(std::span<const GraphSizes> dataset) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyDataset, "abstraction ratio of nothing");
  long original = 0;
  long contracted = 0;
  for (const GraphSizes& s : dataset) {
    original += s.molecule_nodes;
    contracted += s.quotient_nodes;
  }
  if (original == 0) throw Error(ErrorCode::kEmptyDataset, "no nodes");
  return static_cast<double>(contracted) / static_cast<double>(original);
}

}  // namespace funqg
