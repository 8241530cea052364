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

// Command-line front end. Every subcommand prints a JSON report on stdout and
// exits 0 on success, 1 on a library error, 2 on a usage error and 3 when a
// check (gradcheck) fails.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "funqg/coarsener.hpp"
#include "funqg/error.hpp"
#include "funqg/fg_detect.hpp"
#include "funqg/log.hpp"
#include "funqg/nn/checkpoint.hpp"
#include "funqg/nn/gradcheck.hpp"
#include "funqg/pipeline/cache.hpp"
#include "funqg/pipeline/protocol.hpp"
#include "funqg/pipeline/workers.hpp"
#include "funqg/smiles.hpp"
#include "funqg/version.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace funqg;
using namespace funqg::pipeline;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCheckFailed = 3;

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::stringstream one(item);
    T v;
    if (!(one >> v) || !(one >> std::ws).eof()) {
      throw Error(ErrorCode::kBadConfig, "cannot parse list item '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::kBadConfig, "empty list");
  return out;
}

void emit(const json& report, const std::string& path) {
  if (!path.empty()) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kBadFile, "cannot write " + path);
    out << report.dump(2) << '\n';
  }
  std::cout << report.dump(2) << std::endl;
}

std::map<int, int> histogram(const std::vector<int>& values) {
  std::map<int, int> h;
  for (int v : values) ++h[v];
  return h;
}

json histogram_json(const std::vector<int>& values) {
  json out = json::object();
  for (const auto& [k, n] : histogram(values)) out[std::to_string(k)] = n;
  return out;
}

json cache_stats(const GraphCache& cache) {
  std::vector<int> nodes, edges, atoms;
  std::vector<GraphSizes> sizes;
  for (const CacheRecord& r : cache.records) {
    nodes.push_back(r.graph.num_nodes());
    edges.push_back(r.graph.num_edges());
    atoms.push_back(r.atom_count);
    sizes.push_back({r.atom_count, r.graph.num_nodes()});
  }
  return {{"records", cache.records.size()},
          {"coarsen", cache.header.coarsen},
          {"abstraction_ratio", abstraction_ratio(sizes)},
          {"node_histogram", histogram_json(nodes)},
          {"edge_histogram", histogram_json(edges)},
          {"atom_histogram", histogram_json(atoms)}};
}

RunConfig load_config(const std::string& path) {
  return path.empty() ? RunConfig{} : read_run_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional-group graph coarsening and message-passing models for molecules"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  bool verbose = false;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "Log progress to stderr");
  app.add_flag("-q,--quiet", quiet, "Log errors only");

  // coarsen
  std::string input, output, smiles_column = "smiles", targets, task = "regression";
  bool no_coarsen = false, keep_largest = true;
  auto* coarsen = app.add_subcommand("coarsen", "Featurize a CSV into a graph cache");
  coarsen->add_option("--input", input, "CSV file")->required();
  coarsen->add_option("--output", output, "Cache file (JSON Lines)")->required();
  coarsen->add_option("--smiles-column", smiles_column, "SMILES column name");
  coarsen->add_option("--targets", targets, "Comma-separated target columns")->required();
  coarsen->add_option("--task", task, "regression or classification");
  coarsen->add_flag("--no-coarsen", no_coarsen, "Keep raw molecular graphs");
  coarsen->add_flag("--keep-largest-fragment,!--reject-fragments", keep_largest,
                    "Reduce dotted SMILES to their largest fragment (default) or drop them");

  // stats
  std::string cache_path;
  auto* stats = app.add_subcommand("stats", "Abstraction ratio and size histograms of a cache");
  stats->add_option("--cache", cache_path, "Cache file")->required();

  // split
  std::uint64_t split_seed = 1;
  std::string ratios = "0.8,0.1,0.1";
  auto* split = app.add_subcommand("split", "Scaffold split of a cache");
  split->add_option("--cache", cache_path, "Cache file")->required();
  split->add_option("--seed", split_seed, "Split seed");
  split->add_option("--ratios", ratios, "train,valid,test fractions");
  split->add_option("--output", output, "Split manifest (JSON Lines)")->required();

  // train
  std::string split_path, config_path, checkpoint_path, log_path;
  auto* train_cmd = app.add_subcommand("train", "Train one model");
  train_cmd->add_option("--cache", cache_path, "Cache file")->required();
  train_cmd->add_option("--split", split_path, "Split manifest")->required();
  train_cmd->add_option("--config", config_path, "Run configuration (JSON)");
  train_cmd->add_option("--output", checkpoint_path, "Checkpoint file")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Score a checkpoint on the test partition");
  eval->add_option("--cache", cache_path, "Cache file")->required();
  eval->add_option("--split", split_path, "Split manifest")->required();
  eval->add_option("--checkpoint", checkpoint_path, "Checkpoint file")->required();

  // protocol
  std::string seeds = "1,2,3";
  std::string report_path;
  auto* protocol = app.add_subcommand("protocol", "Split, train and evaluate over several seeds");
  protocol->add_option("--cache", cache_path, "Cache file")->required();
  protocol->add_option("--config", config_path, "Run configuration (JSON)");
  protocol->add_option("--seeds", seeds, "Comma-separated split seeds");
  protocol->add_option("--output", report_path, "Also write the report here");

  // search
  int budget = 20;
  std::uint64_t search_seed = 0;
  auto* search = app.add_subcommand("search", "Seeded random hyperparameter search");
  search->add_option("--cache", cache_path, "Cache file")->required();
  search->add_option("--config", config_path, "Base configuration with search ranges (JSON)");
  search->add_option("--budget", budget, "Number of trials");
  search->add_option("--seed", search_seed, "Search seed");
  search->add_option("--output", report_path, "Write the best configuration here");

  // fg
  std::string smiles;
  auto* fg = app.add_subcommand("fg", "Print the functional groups of one molecule");
  fg->add_option("--smiles", smiles, "SMILES string")->required();

  // gradcheck
  std::uint64_t gc_seed = 0;
  int instances = 20;
  auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference gradient suite");
  gradcheck->add_option("--seed", gc_seed, "Seed");
  gradcheck->add_option("--instances", instances, "Random model instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }
  set_log_level(quiet ? LogLevel::kError : verbose ? LogLevel::kInfo : LogLevel::kWarning);

  try {
    const int workers = worker_count();
    if (*coarsen) {
      DatasetSpec spec;
      spec.csv_path = input;
      spec.smiles_column = smiles_column;
      spec.target_columns = parse_list<std::string>(targets);
      spec.task = parse_task_type(task);
      spec.read.fragments = keep_largest ? chem::FragmentPolicy::kKeepLargest
                                         : chem::FragmentPolicy::kReject;
      const Dataset data = load_dataset(spec);
      const GraphCache cache = build_cache(data, spec, !no_coarsen, workers);
      write_cache(output, cache);
      json report = cache_stats(cache);
      report["rows_read"] = data.rows_read;
      report["dropped"] = data.dropped + cache.failed;
      report["cache"] = output;
      report["tool_version"] = std::string(kToolVersion);
      emit(report, "");
    } else if (*stats) {
      emit(cache_stats(read_cache(cache_path)), "");
    } else if (*split) {
      const GraphCache cache = read_cache(cache_path);
      const auto r = parse_list<double>(ratios);
      if (r.size() != 3) throw Error(ErrorCode::kBadRatios, "--ratios needs three values");
      const auto keys = cache.scaffold_keys();
      const SplitAssignment s = scaffold_split(keys, split_seed, {r[0], r[1], r[2]});
      write_split(output, cache, s);
      emit({{"seed", s.seed},
            {"ratios", s.ratios},
            {"sizes", {s.train.size(), s.valid.size(), s.test.size()}},
            {"manifest", output}},
           "");
    } else if (*train_cmd) {
      const GraphCache cache = read_cache(cache_path);
      const SplitAssignment s = read_split(split_path, cache);
      const RunConfig run = load_config(config_path);
      const TrainResult result = train(cache, s, run);
      nn::save_checkpoint(checkpoint_path, result.params, result.manifest);
      json log = json::array();
      for (const EpochLog& e : result.log) {
        log.push_back({{"epoch", e.epoch},
                       {"train_loss", e.train_loss},
                       {"valid_metric", e.valid_metric},
                       {"improved", e.improved}});
      }
      emit({{"metric", metric_name(cache.header.task)},
            {"best_epoch", result.best_epoch},
            {"best_valid", result.best_valid},
            {"epochs", log},
            {"split_seed", s.seed},
            {"training_seed", training_seed(run, s.seed)},
            {"config_digest", config_digest(run)},
            {"checkpoint", checkpoint_path},
            {"tool_version", std::string(kToolVersion)}},
           "");
    } else if (*eval) {
      const GraphCache cache = read_cache(cache_path);
      const SplitAssignment s = read_split(split_path, cache);
      emit(to_json(evaluate(cache, s, nn::read_checkpoint(checkpoint_path))), "");
    } else if (*protocol) {
      const GraphCache cache = read_cache(cache_path);
      const RunConfig run = load_config(config_path);
      const auto seed_list = parse_list<std::uint64_t>(seeds);
      emit(to_json(run_protocol(cache, run, seed_list, workers)), report_path);
    } else if (*search) {
      const GraphCache cache = read_cache(cache_path);
      const RunConfig base = load_config(config_path);
      const SearchResult result = hyper_search(cache, base, budget, search_seed, workers);
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw Error(ErrorCode::kBadFile, "cannot write " + report_path);
        out << to_json(result.best_config()).dump(2) << '\n';
      }
      emit(to_json(result), "");
    } else if (*fg) {
      const chem::Molecule m = chem::read_smiles(smiles);
      json groups = json::array();
      for (const FunctionalGroup& g : detect_functional_groups(m)) {
        std::string elements;
        for (int a : g.atom_indices) elements += m.atom(a).element;
        groups.push_back({{"atoms", g.atom_indices}, {"elements", elements}});
      }
      const QuotientGraph q = funqg::funqg(m);
      emit({{"smiles", smiles},
            {"atoms", m.num_atoms()},
            {"functional_groups", std::move(groups)},
            {"quotient_nodes", q.num_nodes()},
            {"quotient_edges", q.num_edges()}},
           "");
    } else if (*gradcheck) {
      const auto results = nn::run_gradcheck_suite(gc_seed, instances);
      json rows = json::array();
      bool all = true;
      for (const auto& r : results) {
        rows.push_back({{"name", r.name},
                        {"max_relative_error", r.max_relative_error},
                        {"tolerance", r.tolerance},
                        {"passed", r.passed()}});
        all = all && r.passed();
      }
      emit({{"seed", gc_seed}, {"passed", all}, {"checks", std::move(rows)}}, "");
      if (!all) return kExitCheckFailed;
    }
  } catch (const Error& e) {
    json err = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (e.position()) err["position"] = *e.position();
    std::cerr << err.dump() << std::endl;
    return kExitError;
  }
  return 0;
}
