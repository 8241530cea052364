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

#include "funqg/graph.hpp"

namespace funqg {

std::vector<std::vector<std::pair<int, int>>> adjacency(int num_nodes,
                                                        const std::vector<Edge>& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(num_nodes);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    adj[edges[e].u].emplace_back(edges[e].v, e);
    adj[edges[e].v].emplace_back(edges[e].u, e);
  }
  return adj;
}

std::vector<int> component_labels(int num_nodes, const std::vector<Edge>& edges) {
  const auto adj = adjacency(num_nodes, edges);
  std::vector<int> label(num_nodes, -1);
  int next = 0;
  for (int s = 0; s < num_nodes; ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (auto [y, e] : adj[x]) {
        if (label[y] < 0) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace funqg
