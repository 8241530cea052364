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

#ifndef FUNQG_GRAPH_HPP
#define FUNQG_GRAPH_HPP

#include <Eigen/Core>
#include <vector>

namespace funqg {

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using FeatureMatrix = RowMatrix<double>;

/// Undirected edge, stored once.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Graph with one feature row per node and per undirected edge. Used for both
/// molecular graphs and their quotients, so models accept either.
struct FeatureGraph {
  FeatureMatrix node_features;
  std::vector<Edge> edges;
  FeatureMatrix edge_features;

  int num_nodes() const { return static_cast<int>(node_features.rows()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int node_width() const { return static_cast<int>(node_features.cols()); }
  int edge_width() const { return static_cast<int>(edge_features.cols()); }
};

/// Adjacency lists of (neighbor, edge index) pairs.
std::vector<std::vector<std::pair<int, int>>> adjacency(int num_nodes,
                                                        const std::vector<Edge>& edges);

/// Connected-component label per node, labels numbered by smallest member.
std::vector<int> component_labels(int num_nodes, const std::vector<Edge>& edges);

}  // namespace funqg

#endif  // FUNQG_GRAPH_HPP
