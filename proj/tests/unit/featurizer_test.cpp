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

#include "funqg/error.hpp"
#include "funqg/featurizer.hpp"
#include "funqg/smiles.hpp"

namespace funqg {
namespace {

using namespace features;

TEST(Featurizer, Shapes) {
  const MolGraph g = featurize(chem::read_smiles("CC(=O)Nc1ccc(O)cc1"));
  EXPECT_EQ(g.num_nodes(), 11);
  EXPECT_EQ(g.num_edges(), 11);
  EXPECT_EQ(g.node_width(), kAtomWidth);
  EXPECT_EQ(g.edge_width(), kBondWidth);
}

TEST(Featurizer, OneHotSegmentsHaveExactlyOneBit) {
  const MolGraph g = featurize(chem::read_smiles(
      "CCc1c2c(nc3ccc(OC(=O)N4CCC(N5CCCCC5)CC4)cc13)-c1cc3c(c(=O)n1C2)COC(=O)[C@]3(O)CC"));
  for (int r = 0; r < g.num_nodes(); ++r) {
    for (const Segment& s : kAtomOneHots) {
      EXPECT_DOUBLE_EQ(g.node_features.row(r).segment(s.offset, s.size).sum(), 1.0);
    }
  }
  for (int r = 0; r < g.num_edges(); ++r) {
    for (const Segment& s : kBondOneHots) {
      EXPECT_DOUBLE_EQ(g.edge_features.row(r).segment(s.offset, s.size).sum(), 1.0);
    }
  }
}

TEST(Featurizer, EthanolOxygen) {
  const chem::Molecule m = chem::read_smiles("CCO");
  const Eigen::VectorXd x = atom_features(2, m);
  EXPECT_EQ(x[kElement.offset + 3], 1.0);
  EXPECT_EQ(x[kDegree.offset + 1], 1.0);
  EXPECT_EQ(x[kCharge.offset + 2], 1.0);
  EXPECT_EQ(x[kChirality.offset + 0], 1.0);
  EXPECT_EQ(x[kHydrogens.offset + 1], 1.0);
  EXPECT_EQ(x[kHybridization.offset + 2], 1.0);
  EXPECT_EQ(x[kAromaticFlag], 0.0);
  EXPECT_NEAR(x[kMass], 0.159994, 1e-12);
}

TEST(Featurizer, AromaticRingBond) {
  const chem::Molecule m = chem::read_smiles("c1ccccc1");
  const Eigen::VectorXd e = bond_features(0, m);
  EXPECT_EQ(e[kBondOrder.offset + 3], 1.0);
  EXPECT_EQ(e[kConjugatedFlag], 1.0);
  EXPECT_EQ(e[kInRingFlag], 1.0);
  EXPECT_EQ(e[kStereo.offset], 1.0);
  EXPECT_EQ(atom_features(0, m)[kAromaticFlag], 1.0);
}

TEST(Featurizer, UnknownElementUsesOtherSlot) {
  const chem::Molecule m = chem::read_smiles("[Se]");
  EXPECT_EQ(atom_features(0, m)[kElement.offset + kElement.size - 1], 1.0);
}

TEST(Featurizer, EmptyMoleculeRejected) {
  EXPECT_THROW(featurize(chem::Molecule{}), Error);
}

TEST(Featurizer, Deterministic) {
  const auto a = featurize(chem::read_smiles("OC(=O)c1ccccc1O"));
  const auto b = featurize(chem::read_smiles("OC(=O)c1ccccc1O"));
  EXPECT_EQ(a.node_features, b.node_features);
  EXPECT_EQ(a.edge_features, b.edge_features);
}

}  // namespace
}  // namespace funqg
