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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "funqg/fg_detect.hpp"
#include "funqg/smiles.hpp"

namespace funqg {
namespace {

std::vector<std::vector<int>> detect(const std::string& smiles) {
  std::vector<std::vector<int>> out;
  for (const auto& fg : detect_functional_groups(chem::read_smiles(smiles))) {
    out.push_back(fg.atom_indices);
  }
  return out;
}

TEST(FgDetect, Ethanol) { EXPECT_EQ(detect("CCO"), (std::vector<std::vector<int>>{{2}})); }

TEST(FgDetect, NoGroupsInAlkaneOrBenzene) {
  EXPECT_TRUE(detect("CCCCCC").empty());
  EXPECT_TRUE(detect("c1ccccc1").empty());
}

TEST(FgDetect, CarboxylicAcidIsOneGroup) {
  EXPECT_EQ(detect("CC(=O)O"), (std::vector<std::vector<int>>{{1, 2, 3}}));
}

TEST(FgDetect, AcetalCarbonJoinsOxygens) {
  EXPECT_EQ(detect("CC(C)(OC)OC"), (std::vector<std::vector<int>>{{1, 3, 5}}));
}

TEST(FgDetect, EpoxideRing) { EXPECT_EQ(detect("C1CO1"), (std::vector<std::vector<int>>{{0, 1, 2}})); }

TEST(FgDetect, GroupsDisjointAndConnected) {
  const chem::Molecule m = chem::read_smiles(
      "CCc1c2c(nc3ccc(OC(=O)N4CCC(N5CCCCC5)CC4)cc13)-c1cc3c(c(=O)n1C2)COC(=O)[C@]3(O)CC");
  std::vector<int> seen(m.num_atoms(), 0);
  for (const auto& fg : detect_functional_groups(m)) {
    for (int a : fg.atom_indices) ++seen[a];
    // connected: BFS inside the group reaches every member
    std::vector<int> stack{fg.atom_indices.front()};
    std::set<int> reached{fg.atom_indices.front()};
    const std::set<int> members(fg.atom_indices.begin(), fg.atom_indices.end());
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (const auto& n : m.neighbors(a)) {
        if (members.count(n.atom) && reached.insert(n.atom).second) stack.push_back(n.atom);
      }
    }
    EXPECT_EQ(reached.size(), members.size());
  }
  for (int c : seen) EXPECT_LE(c, 1);
}

void check_parity(const std::string& fixture, int expected_rows) {
  const auto rows = testing::read_tsv(fixture);
  ASSERT_EQ(static_cast<int>(rows.size()), expected_rows);
  int mismatches = 0;
  for (const auto& row : rows) {
    const auto want = testing::parse_groups(row.size() > 1 ? row[1] : "");
    const auto got = detect(row[0]);
    if (got != want) {
      ++mismatches;
      ADD_FAILURE() << "FG mismatch for " << row[0];
    }
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(FgDetect, CuratedReferenceParity) { check_parity("fg_parity_25.tsv", 25); }

TEST(FgDetect, CorpusReferenceParity) {
  const auto rows = testing::read_tsv("fg_parity_corpus.tsv");
  check_parity("fg_parity_corpus.tsv", static_cast<int>(rows.size()));
}

}  // namespace
}  // namespace funqg
