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

#include "funqg/pipeline/cache.hpp"

#include <fstream>
#include <optional>

#include "funqg/coarsener.hpp"
#include "funqg/error.hpp"
#include "funqg/featurizer.hpp"
#include "funqg/log.hpp"
#include "funqg/pipeline/workers.hpp"
#include "funqg/version.hpp"
#include "json.hpp"

namespace funqg::pipeline {
namespace {

using nlohmann::json;

json matrix_rows(const FeatureMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).data(), m.row(r).data() + m.cols()));
  }
  return rows;
}

FeatureMatrix matrix_from(const json& rows, int width) {
  FeatureMatrix m(static_cast<Eigen::Index>(rows.size()), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto values = rows[r].get<std::vector<double>>();
    if (static_cast<int>(values.size()) != width) {
      throw Error(ErrorCode::kManifestMismatch, "feature row width differs from the header");
    }
    for (int c = 0; c < width; ++c) m(static_cast<Eigen::Index>(r), c) = values[c];
  }
  return m;
}

std::uint64_t parse_hex(const std::string& s) {
  std::size_t used = 0;
  const std::uint64_t v = std::stoull(s, &used, 16);
  if (used != s.size()) throw Error(ErrorCode::kBadFile, "bad scaffold key " + s);
  return v;
}

std::ifstream open_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kBadFile, "cannot read " + path);
  return in;
}

std::ofstream open_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kBadFile, "cannot write " + path);
  return out;
}

}  // namespace

std::vector<ScaffoldKey> GraphCache::scaffold_keys() const {
  std::vector<ScaffoldKey> keys;
  keys.reserve(records.size());
  for (const auto& r : records) keys.push_back(r.scaffold);
  return keys;
}

GraphCache build_cache(const Dataset& data, const DatasetSpec& spec, bool coarsen, int workers) {
  const int n = static_cast<int>(data.records.size());
  std::vector<std::optional<CacheRecord>> slots(n);
  parallel_for(n, workers, [&](int i) {
    const Record& rec = data.records[i];
    try {
      const chem::Molecule m = chem::read_smiles(rec.smiles, spec.read);
      CacheRecord out;
      out.row = rec.row;
      out.smiles = rec.smiles;
      out.atom_count = m.num_atoms();
      out.graph = coarsen ? funqg(m).graph : featurize(m);
      out.targets = rec.targets;
      out.mask = rec.mask;
      out.scaffold = murcko_scaffold(m);
      slots[i] = std::move(out);
    } catch (const Error& e) {
      log_warning("row " + std::to_string(rec.row) + " skipped: " + e.what());
    }
  });

  GraphCache cache;
  cache.header.node_width = features::kAtomWidth;
  cache.header.edge_width = features::kBondWidth;
  cache.header.coarsen = coarsen;
  cache.header.tool_version = std::string(kToolVersion);
  cache.header.task = spec.task;
  cache.header.targets = spec.target_columns;
  for (auto& slot : slots) {
    if (!slot) {
      ++cache.failed;
      continue;
    }
    slot->index = static_cast<int>(cache.records.size());
    cache.records.push_back(std::move(*slot));
  }
  if (cache.records.empty()) throw Error(ErrorCode::kEmptyDataset, "no molecule could be cached");
  return cache;
}

void write_cache(const std::string& path, const GraphCache& cache) {
  std::ofstream out = open_write(path);
  const CacheHeader& h = cache.header;
  out << json{{"format", "funqg-graph-cache"},
              {"version", kCacheVersion},
              {"node_width", h.node_width},
              {"edge_width", h.edge_width},
              {"coarsen", h.coarsen},
              {"tool_version", h.tool_version},
              {"task", to_string(h.task)},
              {"targets", h.targets}}
             .dump()
      << '\n';
  for (const CacheRecord& r : cache.records) {
    json edges = json::array();
    for (const Edge& e : r.graph.edges) edges.push_back({e.u, e.v});
    out << json{{"index", r.index},
                {"row", r.row},
                {"smiles", r.smiles},
                {"atom_count", r.atom_count},
                {"node_features", matrix_rows(r.graph.node_features)},
                {"edges", std::move(edges)},
                {"edge_features", matrix_rows(r.graph.edge_features)},
                {"targets", r.targets},
                {"mask", r.mask},
                {"scaffold_key", r.scaffold.hex()}}
               .dump()
        << '\n';
  }
  if (!out) throw Error(ErrorCode::kBadFile, "failed writing " + path);
}

GraphCache read_cache(const std::string& path) {
  std::ifstream in = open_read(path);
  GraphCache cache;
  std::string line;
  int line_no = 0;
  try {
    if (!std::getline(in, line)) throw Error(ErrorCode::kBadFile, path + " is empty");
    ++line_no;
    const json h = json::parse(line);
    if (h.at("format") != "funqg-graph-cache" || h.at("version") != kCacheVersion) {
      throw Error(ErrorCode::kBadFile, path + " is not a version " + std::to_string(kCacheVersion) +
                                           " graph cache");
    }
    cache.header.node_width = h.at("node_width");
    cache.header.edge_width = h.at("edge_width");
    cache.header.coarsen = h.at("coarsen");
    cache.header.tool_version = h.at("tool_version");
    cache.header.task = parse_task_type(h.at("task").get<std::string>());
    cache.header.targets = h.at("targets").get<std::vector<std::string>>();
    const std::size_t tasks = cache.header.targets.size();
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const json j = json::parse(line);
      CacheRecord r;
      r.index = j.at("index");
      r.row = j.at("row");
      r.smiles = j.at("smiles");
      r.atom_count = j.at("atom_count");
      r.graph.node_features = matrix_from(j.at("node_features"), cache.header.node_width);
      for (const auto& e : j.at("edges")) r.graph.edges.push_back({e.at(0), e.at(1)});
      r.graph.edge_features = matrix_from(j.at("edge_features"), cache.header.edge_width);
      r.targets = j.at("targets").get<std::vector<double>>();
      r.mask = j.at("mask").get<std::vector<double>>();
      r.scaffold = {parse_hex(j.at("scaffold_key"))};
      if (r.index != static_cast<int>(cache.records.size()) || r.targets.size() != tasks ||
          r.mask.size() != tasks || r.graph.edge_features.rows() != r.graph.num_edges()) {
        throw Error(ErrorCode::kManifestMismatch, "inconsistent record");
      }
      for (const Edge& e : r.graph.edges) {
        if (e.u < 0 || e.v < 0 || e.u >= r.graph.num_nodes() || e.v >= r.graph.num_nodes()) {
          throw Error(ErrorCode::kManifestMismatch, "edge endpoint out of range");
        }
      }
      cache.records.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadFile, path + ":" + std::to_string(line_no) + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBadFile) throw;
    throw Error(e.code(), path + ":" + std::to_string(line_no) + ": " + e.what());
  }
  if (cache.records.empty()) throw Error(ErrorCode::kEmptyDataset, path + " holds no records");
  return cache;
}

void check_cache(const GraphCache& cache, int node_width, int edge_width, bool coarsen) {
  const CacheHeader& h = cache.header;
  if (h.node_width != node_width || h.edge_width != edge_width || h.coarsen != coarsen) {
    throw Error(ErrorCode::kManifestMismatch,
                "cache holds " + std::string(h.coarsen ? "coarsened" : "raw") + " graphs of width " +
                    std::to_string(h.node_width) + "/" + std::to_string(h.edge_width) +
                    ", expected " + (coarsen ? "coarsened" : "raw") + " " +
                    std::to_string(node_width) + "/" + std::to_string(edge_width));
  }
}

void write_split(const std::string& path, const GraphCache& cache, const SplitAssignment& split) {
  std::ofstream out = open_write(path);
  const int n = static_cast<int>(cache.records.size());
  out << json{{"format", "funqg-split"},
              {"version", kSplitVersion},
              {"seed", split.seed},
              {"ratios", split.ratios},
              {"size", n}}
             .dump()
      << '\n';
  const auto labels = split.labels(n);
  for (int i = 0; i < n; ++i) {
    out << json{{"index", i},
                {"smiles", cache.records[i].smiles},
                {"partition", to_string(labels[i])},
                {"scaffold_key_hex", cache.records[i].scaffold.hex()}}
               .dump()
        << '\n';
  }
  if (!out) throw Error(ErrorCode::kBadFile, "failed writing " + path);
}

SplitAssignment read_split(const std::string& path, const GraphCache& cache) {
  std::ifstream in = open_read(path);
  SplitAssignment split;
  std::string line;
  try {
    if (!std::getline(in, line)) throw Error(ErrorCode::kBadFile, path + " is empty");
    const json h = json::parse(line);
    if (h.at("format") != "funqg-split" || h.at("version") != kSplitVersion) {
      throw Error(ErrorCode::kBadFile, path + " is not a split manifest");
    }
    split.seed = h.at("seed");
    split.ratios = h.at("ratios");
    if (h.at("size").get<std::size_t>() != cache.records.size()) {
      throw Error(ErrorCode::kManifestMismatch, "split covers a different number of molecules");
    }
    std::size_t seen = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json j = json::parse(line);
      const std::size_t i = j.at("index");
      if (i != seen || i >= cache.records.size() || j.at("smiles") != cache.records[i].smiles) {
        throw Error(ErrorCode::kManifestMismatch, "split line " + std::to_string(seen + 1) +
                                                      " does not match the cache");
      }
      const std::string part = j.at("partition");
      if (part == "train") {
        split.train.push_back(static_cast<int>(i));
      } else if (part == "valid") {
        split.valid.push_back(static_cast<int>(i));
      } else if (part == "test") {
        split.test.push_back(static_cast<int>(i));
      } else {
        throw Error(ErrorCode::kBadFile, "unknown partition " + part);
      }
      ++seen;
    }
    if (seen != cache.records.size()) throw Error(ErrorCode::kManifestMismatch, "split is truncated");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadFile, path + ": " + e.what());
  }
  return split;
}

}  // namespace funqg::pipeline
