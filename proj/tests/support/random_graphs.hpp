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

// Random feature graphs with functional-group style node sets, and an
// independent single-pass quotient used as a reference.

#ifndef FUNQG_TESTS_RANDOM_GRAPHS_HPP
#define FUNQG_TESTS_RANDOM_GRAPHS_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "funqg/fg_detect.hpp"
#include "funqg/graph.hpp"

namespace funqg::testing {

/// Connected simple graph: a random spanning tree plus extra chords.
inline FeatureGraph random_connected_graph(std::mt19937_64& rng, int n, int extra_edges,
                                           int node_width = 4, int edge_width = 3) {
  FeatureGraph g;
  std::set<std::pair<int, int>> present;
  auto add = [&](int u, int v) {
    if (u == v) return;
    if (!present.insert({std::min(u, v), std::max(u, v)}).second) return;
    g.edges.push_back({u, v});
  };
  for (int v = 1; v < n; ++v) add(static_cast<int>(rng() % v), v);
  for (int k = 0; k < extra_edges && n > 1; ++k) {
    add(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
  }
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  g.node_features.resize(n, node_width);
  for (int i = 0; i < g.node_features.size(); ++i) g.node_features.data()[i] = unit(rng);
  g.edge_features.resize(g.num_edges(), edge_width);
  for (int i = 0; i < g.edge_features.size(); ++i) g.edge_features.data()[i] = unit(rng);
  return g;
}

/// Disjoint connected node sets grown from random seeds.
inline std::vector<FunctionalGroup> random_groups(std::mt19937_64& rng, const FeatureGraph& g,
                                                  int max_groups, int max_size) {
  const auto adj = adjacency(g.num_nodes(), g.edges);
  std::vector<int> owner(g.num_nodes(), -1);
  std::vector<FunctionalGroup> groups;
  const int wanted = static_cast<int>(rng() % (max_groups + 1));
  for (int k = 0; k < wanted; ++k) {
    const int seed = static_cast<int>(rng() % g.num_nodes());
    if (owner[seed] >= 0) continue;
    const int gid = static_cast<int>(groups.size());
    std::vector<int> members{seed};
    owner[seed] = gid;
    const int size = 1 + static_cast<int>(rng() % max_size);
    for (int step = 0; step < 4 * size && static_cast<int>(members.size()) < size; ++step) {
      const int from = members[rng() % members.size()];
      if (adj[from].empty()) break;
      const int to = adj[from][rng() % adj[from].size()].first;
      if (owner[to] >= 0) continue;
      owner[to] = gid;
      members.push_back(to);
    }
    std::sort(members.begin(), members.end());
    groups.push_back({members});
  }
  std::sort(groups.begin(), groups.end(), [](const FunctionalGroup& a, const FunctionalGroup& b) {
    return a.atom_indices.front() < b.atom_indices.front();
  });
  return groups;
}

/// Same graph with nodes relabelled, edges reordered and edge directions flipped.
inline FeatureGraph permuted(const FeatureGraph& g, std::mt19937_64& rng) {
  std::vector<int> perm(g.num_nodes());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> edge_order(g.num_edges());
  std::iota(edge_order.begin(), edge_order.end(), 0);
  std::shuffle(edge_order.begin(), edge_order.end(), rng);
  FeatureGraph out;
  out.node_features.resize(g.num_nodes(), g.node_width());
  for (int v = 0; v < g.num_nodes(); ++v) out.node_features.row(perm[v]) = g.node_features.row(v);
  out.edge_features.resize(g.num_edges(), g.edge_width());
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges[edge_order[i]];
    Edge mapped{perm[e.u], perm[e.v]};
    if (rng() % 2) std::swap(mapped.u, mapped.v);
    out.edges.push_back(mapped);
    out.edge_features.row(i) = g.edge_features.row(edge_order[i]);
  }
  return out;
}

struct ReferenceQuotient {
  std::vector<std::vector<int>> blocks;       // ordered by smallest member
  std::set<std::pair<int, int>> block_edges;  // (lo, hi)
};

/// Union-find over the rule "same group, or both outside every group".
inline ReferenceQuotient reference_quotient(const FeatureGraph& g,
                                            const std::vector<FunctionalGroup>& groups) {
  const int n = g.num_nodes();
  std::vector<int> group(n, -1);
  for (int k = 0; k < static_cast<int>(groups.size()); ++k) {
    for (int v : groups[k].atom_indices) group[v] = k;
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : g.edges) {
    if (group[e.u] == group[e.v]) parent[find(e.u)] = find(e.v);
  }
  std::vector<int> label(n, -1);
  ReferenceQuotient q;
  for (int v = 0; v < n; ++v) {
    const int root = find(v);
    if (label[root] < 0) {
      label[root] = static_cast<int>(q.blocks.size());
      q.blocks.emplace_back();
    }
    q.blocks[label[root]].push_back(v);
  }
  for (const Edge& e : g.edges) {
    const int a = label[find(e.u)];
    const int b = label[find(e.v)];
    if (a != b) q.block_edges.insert({std::min(a, b), std::max(a, b)});
  }
  return q;
}

}  // namespace funqg::testing

#endif  // FUNQG_TESTS_RANDOM_GRAPHS_HPP
