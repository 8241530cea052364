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

#ifndef FUNQG_PIPELINE_DATASET_HPP
#define FUNQG_PIPELINE_DATASET_HPP

#include <string>
#include <vector>

#include "funqg/smiles.hpp"

namespace funqg::pipeline {

enum class TaskType { kClassification, kRegression };

std::string_view to_string(TaskType t);
TaskType parse_task_type(std::string_view s);

struct DatasetSpec {
  std::string csv_path;
  std::string smiles_column = "smiles";
  std::vector<std::string> target_columns;
  TaskType task = TaskType::kRegression;
  chem::ReadOptions read;  // fragment policy for multi-component SMILES
};

struct Record {
  int row = 0;  // 0-based data row in the CSV
  std::string smiles;
  std::vector<double> targets;  // 0 where masked
  std::vector<double> mask;     // 1 labelled, 0 missing
};

struct Dataset {
  std::vector<Record> records;
  int rows_read = 0;
  int dropped = 0;  // rows whose SMILES failed to parse
};

/// Reads a CSV with a header row. Empty target cells become masked entries;
/// rows whose SMILES does not parse are dropped and counted.
///
/// Throws kBadFile, kMissingColumn, kBadConfig (no targets declared) and
/// kEmptyDataset (nothing usable).
Dataset load_dataset(const DatasetSpec& spec);

/// Splits one CSV line. Fields may be double-quoted, with "" for a literal
/// quote; backslashes are ordinary characters. Throws kBadFile on an open quote.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace funqg::pipeline

#endif  // FUNQG_PIPELINE_DATASET_HPP
