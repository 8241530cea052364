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

#include <set>

#include "fixtures.hpp"
#include "funqg/error.hpp"
#include "funqg/scaffold.hpp"
#include "funqg/smiles.hpp"

namespace funqg {
namespace {

ScaffoldKey key_of(const std::string& s) { return murcko_scaffold(chem::read_smiles(s)); }

TEST(Scaffold, RingFreeIsEmpty) {
  EXPECT_TRUE(key_of("CCCCCC").empty());
  EXPECT_TRUE(key_of("CCO").empty());
  EXPECT_FALSE(key_of("c1ccccc1").empty());
}

TEST(Scaffold, SubstituentsRemoved) {
  EXPECT_EQ(key_of("Cc1ccccc1"), key_of("CCc1ccccc1"));
  EXPECT_EQ(key_of("c1ccccc1"), key_of("Cc1ccccc1"));
}

TEST(Scaffold, ExocyclicDoubleBondKept) {
  const auto atoms = scaffold_atoms(chem::read_smiles("O=C1CCCCC1"));
  EXPECT_EQ(atoms.size(), 7u);
}

TEST(Scaffold, ReferencePairs) {
  for (const auto& row : testing::read_tsv("scaffold_pairs.tsv")) {
    const bool same = key_of(row[0]) == key_of(row[1]);
    EXPECT_EQ(same, row[2] == "1") << row[0] << " vs " << row[1];
  }
}

TEST(Scaffold, AtomOrderDoesNotMatter) {
  EXPECT_EQ(key_of("c1ccc(CC2CCCCC2)cc1"), key_of("C1CCC(Cc2ccccc2)CC1"));
  EXPECT_EQ(key_of("c1ccc2ccccc2c1"), key_of("c1cc2ccccc2cc1"));
  EXPECT_NE(key_of("c1ccc2ccccc2c1"), key_of("c1ccc(-c2ccccc2)cc1"));
}

TEST(Scaffold, HexIsSixteenDigits) { EXPECT_EQ(key_of("c1ccccc1").hex().size(), 16u); }

std::vector<ScaffoldKey> grouped_keys(int groups, int size) {
  std::vector<ScaffoldKey> keys;
  for (int g = 0; g < groups; ++g) {
    for (int i = 0; i < size; ++i) keys.push_back({static_cast<std::uint64_t>(g + 1)});
  }
  return keys;
}

void expect_no_straddling(std::span<const ScaffoldKey> keys, const SplitAssignment& s) {
  const auto labels = s.labels(static_cast<int>(keys.size()));
  std::map<ScaffoldKey, Partition> seen;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [it, inserted] = seen.try_emplace(keys[i], labels[i]);
    if (!inserted) {
      EXPECT_EQ(it->second, labels[i]);
    }
  }
  std::set<int> all;
  for (auto* p : {&s.train, &s.valid, &s.test}) {
    for (int i : *p) EXPECT_TRUE(all.insert(i).second);
  }
  EXPECT_EQ(all.size(), keys.size());
}

TEST(Split, TenEqualGroups) {
  const auto keys = grouped_keys(10, 10);
  for (std::uint64_t seed : {0u, 1u, 2u, 99u}) {
    const auto s = scaffold_split(keys, seed);
    EXPECT_EQ(s.train.size(), 80u);
    EXPECT_EQ(s.valid.size(), 10u);
    EXPECT_EQ(s.test.size(), 10u);
    expect_no_straddling(keys, s);
  }
}

TEST(Split, SingleScaffoldIsDegenerate) {
  const auto keys = grouped_keys(1, 50);
  try {
    scaffold_split(keys, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateSplit);
  }
}

TEST(Split, BadRatios) {
  const auto keys = grouped_keys(10, 1);
  EXPECT_THROW(scaffold_split(keys, 0, {0.8, 0.3, 0.1}), Error);
  EXPECT_THROW(scaffold_split(keys, 0, {1.0, 0.0, 0.0}), Error);
}

TEST(Split, Deterministic) {
  std::vector<ScaffoldKey> keys;
  for (int i = 0; i < 300; ++i) keys.push_back({static_cast<std::uint64_t>(1 + (i * 7919) % 61)});
  const auto a = scaffold_split(keys, 5);
  const auto b = scaffold_split(keys, 5);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.valid, b.valid);
  EXPECT_EQ(a.test, b.test);
  expect_no_straddling(keys, a);
}

TEST(Split, SeedsChangeTestSet) {
  std::vector<ScaffoldKey> keys;
  for (int g = 0; g < 40; ++g) {
    for (int i = 0; i <= g % 4; ++i) keys.push_back({static_cast<std::uint64_t>(g + 1)});
  }
  const auto a = scaffold_split(keys, 1).test;
  const auto b = scaffold_split(keys, 2).test;
  const auto c = scaffold_split(keys, 3).test;
  EXPECT_TRUE(a != b || b != c || a != c);
  EXPECT_GE((a != b) + (b != c) + (a != c), 2);
}

TEST(Split, TrainFractionNearTarget) {
  std::vector<ScaffoldKey> keys;
  for (int i = 0; i < 1000; ++i) keys.push_back({static_cast<std::uint64_t>(1 + i % 230)});
  const auto s = scaffold_split(keys, 3);
  EXPECT_GE(s.train.size(), 800u - 5u);
  EXPECT_LE(s.train.size(), 800u);
}

}  // namespace
}  // namespace funqg
