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

#include "funqg/pipeline/dataset.hpp"

#include <algorithm>
#include <fstream>

#include "funqg/error.hpp"
#include "funqg/log.hpp"

namespace funqg::pipeline {

std::string_view to_string(TaskType t) {
  return t == TaskType::kClassification ? "classification" : "regression";
}

TaskType parse_task_type(std::string_view s) {
  if (s == "classification") return TaskType::kClassification;
  if (s == "regression") return TaskType::kRegression;
  throw Error(ErrorCode::kBadConfig, "unknown task type '" + std::string(s) + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c != '"') {
        fields.back() += c;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kBadFile, "unterminated quoted field");
  return fields;
}

Dataset load_dataset(const DatasetSpec& spec) {
  if (spec.target_columns.empty()) throw Error(ErrorCode::kBadConfig, "no target columns declared");
  std::ifstream in(spec.csv_path);
  if (!in) throw Error(ErrorCode::kBadFile, "cannot read " + spec.csv_path);

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kEmptyDataset, spec.csv_path + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorCode::kMissingColumn, "column '" + name + "' not found");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t smiles_col = column(spec.smiles_column);
  std::vector<std::size_t> target_cols;
  for (const auto& name : spec.target_columns) target_cols.push_back(column(name));

  Dataset ds;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const int row = ds.rows_read++;
    std::vector<std::string> fields;
    try {
      fields = split_csv_line(line);
    } catch (const Error& e) {
      log_info("row " + std::to_string(row) + " dropped: " + e.what());
      ++ds.dropped;
      continue;
    }
    fields.resize(std::max(fields.size(), header.size()));
    Record r;
    r.row = row;
    r.smiles = fields[smiles_col];
    try {
      chem::read_smiles(r.smiles, spec.read);
    } catch (const Error& e) {
      log_info("row " + std::to_string(row) + " dropped: " + e.what());
      ++ds.dropped;
      continue;
    }
    for (std::size_t c : target_cols) {
      const std::string& cell = fields[c];
      if (cell.empty()) {
        r.targets.push_back(0.0);
        r.mask.push_back(0.0);
        continue;
      }
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        r.targets.push_back(v);
        r.mask.push_back(1.0);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kBadFile, "row " + std::to_string(row) + ": bad target '" + cell + "'");
      }
    }
    ds.records.push_back(std::move(r));
  }
  if (ds.dropped > 0) {
    log_warning(spec.csv_path + ": dropped " + std::to_string(ds.dropped) + " of " +
                std::to_string(ds.rows_read) + " rows with unparseable SMILES");
  }
  if (ds.records.empty()) throw Error(ErrorCode::kEmptyDataset, spec.csv_path + " has no usable rows");
  return ds;
}

}  // namespace funqg::pipeline
