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

#ifndef FUNQG_TESTS_FIXTURES_HPP
#define FUNQG_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace funqg::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(FUNQG_FIXTURE_DIR) + "/" + name;
}

/// Tab-separated rows of a fixture file, skipping '#' comments.
inline std::vector<std::vector<std::string>> read_tsv(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (!line.empty() && line.back() == '\t') fields.emplace_back();
    rows.push_back(std::move(fields));
  }
  return rows;
}

/// "1,2,3;8" -> {{1,2,3},{8}}.
inline std::vector<std::vector<int>> parse_groups(const std::string& text) {
  std::vector<std::vector<int>> groups;
  if (text.empty()) return groups;
  std::stringstream ss(text);
  std::string group;
  while (std::getline(ss, group, ';')) {
    std::vector<int> atoms;
    std::stringstream gs(group);
    std::string idx;
    while (std::getline(gs, idx, ',')) atoms.push_back(std::stoi(idx));
    groups.push_back(std::move(atoms));
  }
  return groups;
}

}  // namespace funqg::testing

#endif  // FUNQG_TESTS_FIXTURES_HPP
