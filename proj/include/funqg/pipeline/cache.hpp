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

// Graph cache: JSON Lines. The first line is a header
//   {"format": "funqg-graph-cache", "version": 1, "node_width": 37, "edge_width": 9,
//    "coarsen": true, "tool_version": "...", "task": "regression", "targets": [...]}
// followed by one record per molecule
//   {"index": 0, "row": 0, "smiles": "...", "atom_count": 3,
//    "node_features": [[...], ...], "edges": [[u, v], ...], "edge_features": [[...], ...],
//    "targets": [...], "mask": [...], "scaffold_key": "16 hex digits"}
//
// Split manifest: JSON Lines, header {"format": "funqg-split", "version": 1,
// "seed": s, "ratios": [...], "size": n} and then one line per molecule
//   {"index": i, "smiles": "...", "partition": "train", "scaffold_key_hex": "..."}

#ifndef FUNQG_PIPELINE_CACHE_HPP
#define FUNQG_PIPELINE_CACHE_HPP

#include <string>
#include <vector>

#include "funqg/graph.hpp"
#include "funqg/pipeline/dataset.hpp"
#include "funqg/scaffold.hpp"

namespace funqg::pipeline {

inline constexpr int kCacheVersion = 1;
inline constexpr int kSplitVersion = 1;

struct CacheHeader {
  int node_width = 0;
  int edge_width = 0;
  bool coarsen = true;
  std::string tool_version;
  TaskType task = TaskType::kRegression;
  std::vector<std::string> targets;
};

struct CacheRecord {
  int index = 0;  // position in the cache
  int row = 0;    // source CSV row
  std::string smiles;
  int atom_count = 0;  // heavy atoms before coarsening
  FeatureGraph graph;
  std::vector<double> targets;
  std::vector<double> mask;
  ScaffoldKey scaffold;
};

struct GraphCache {
  CacheHeader header;
  std::vector<CacheRecord> records;
  int failed = 0;  // molecules skipped while building

  std::vector<ScaffoldKey> scaffold_keys() const;
};

/// Featurizes (and, if `coarsen`, applies FunQG to) every record. Runs on
/// `workers` threads; the output is identical for any worker count.
GraphCache build_cache(const Dataset& data, const DatasetSpec& spec, bool coarsen, int workers);

void write_cache(const std::string& path, const GraphCache& cache);
GraphCache read_cache(const std::string& path);

/// Throws kManifestMismatch if the cache was built with other widths or
/// coarsening than expected.
void check_cache(const GraphCache& cache, int node_width, int edge_width, bool coarsen);

struct SplitManifest {
  SplitAssignment split;
  int size = 0;
};

void write_split(const std::string& path, const GraphCache& cache, const SplitAssignment& split);

/// Reads a manifest and checks it index by index against `cache`
/// (kManifestMismatch on any disagreement).
SplitAssignment read_split(const std::string& path, const GraphCache& cache);

}  // namespace funqg::pipeline

#endif  // FUNQG_PIPELINE_CACHE_HPP
