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

// Functional-group based graph coarsening.
//
// A molecule's graph is cut along every bond that touches a functional group
// without lying inside one. The connected components of what remains form a
// partition of the atoms: each functional group is one block, and each maximal
// carbon-only fragment between groups is another. The molecular quotient graph
// contracts every block to a single node and joins two blocks whenever some
// bond joined their members.
//
// Node/edge features are aggregated in two stages: first carbon blocks are
// contracted with a mean, then functional groups are contracted with a sum.
// The structure after both stages equals the one-step quotient by the full
// partition.

#ifndef FUNQG_COARSENER_HPP
#define FUNQG_COARSENER_HPP

#include <span>
#include <vector>

#include "funqg/fg_detect.hpp"
#include "funqg/graph.hpp"
#include "funqg/molecule.hpp"

namespace funqg {

enum class Aggregation { kSum, kMean };
enum class BlockKind { kFunctionalGroup, kCarbon };

struct PartitionSet {
  std::vector<std::vector<int>> blocks;  // each sorted; blocks ordered by smallest member
  std::vector<BlockKind> kinds;

  int size() const { return static_cast<int>(blocks.size()); }
  /// Block index of every node; throws kInvalidPartition if blocks overlap or miss a node.
  std::vector<int> block_of(int num_nodes) const;
};

struct QuotientGraph {
  FeatureGraph graph;
  /// Original nodes contracted into each quotient node (sorted).
  std::vector<std::vector<int>> node_sources;
  /// Original edge indices contracted into each quotient edge (sorted).
  std::vector<std::vector<int>> edge_sources;

  int num_nodes() const { return graph.num_nodes(); }
  int num_edges() const { return graph.num_edges(); }
};

/// Indices of edges with an endpoint in a functional group whose endpoints do
/// not share a group. Throws kOverlappingFGs when groups share atoms.
std::vector<int> compute_cut_edges(const FeatureGraph& g, const std::vector<FunctionalGroup>& fgs);

/// Connected components of g without `cut`. Throws kFGNotComponent if a
/// functional group does not come out as exactly one component.
PartitionSet components_partition(const FeatureGraph& g, std::span<const int> cut,
                                  const std::vector<FunctionalGroup>& fgs);

/// G/P with aggregated features. Quotient edges are ordered by (lower block,
/// higher block).
QuotientGraph quotient(const FeatureGraph& g, const PartitionSet& p, Aggregation node_agg,
                       Aggregation edge_agg);

struct FunqgOptions {
  Aggregation carbon_aggregation = Aggregation::kMean;  // stage (a)
  Aggregation group_aggregation = Aggregation::kSum;    // stage (b)
};

/// Two-stage molecular quotient graph of an already featurized molecule.
QuotientGraph funqg(const FeatureGraph& g, const std::vector<FunctionalGroup>& fgs,
                    const FunqgOptions& options = {});
QuotientGraph funqg(const chem::Molecule& m, const FunqgOptions& options = {});

/// Partition used by funqg (cut + components) for a featurized molecule.
PartitionSet funqg_partition(const FeatureGraph& g, const std::vector<FunctionalGroup>& fgs);

struct GraphSizes {
  long molecule_nodes = 0;
  long quotient_nodes = 0;
};

/// Total quotient nodes over total molecular-graph nodes. Throws kEmptyDataset.
double abstraction_ratio(std::span<const GraphSizes> dataset);

}  // namespace funqg

#endif  // FUNQG_COARSENER_HPP
