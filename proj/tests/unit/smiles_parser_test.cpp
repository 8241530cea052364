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

#include <functional>
#include <set>

#include "fixtures.hpp"
#include "funqg/error.hpp"
#include "funqg/smiles.hpp"

namespace funqg::chem {
namespace {

constexpr const char* kFig3 = "Cc1cc(N)c2ccccc2[n+]1CCCCCCCCCC[n+]1c(C)cc(N)c2ccccc21";
constexpr const char* kFig4 =
    "CCc1c2c(nc3ccc(OC(=O)N4CCC(N5CCCCC5)CC4)cc13)-c1cc3c(c(=O)n1C2)COC(=O)[C@]3(O)CC";

ErrorCode error_of(std::string_view s) {
  try {
    read_smiles(s, {FragmentPolicy::kReject});
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << s;
  return ErrorCode::kBadFile;
}

TEST(Tokenize, SimpleChain) {
  const auto t = tokenize("CCO");
  ASSERT_EQ(t.size(), 3u);
  for (const Token& tok : t) EXPECT_EQ(tok.kind, TokenKind::kOrganicAtom);
  EXPECT_EQ(t[2].element, "O");
}

TEST(Tokenize, LexemesReproduceInput) {
  for (const char* s : {kFig3, kFig4, "C[C@@H](F)Cl", "F/C=C/F", "C%12CC%12", "[13CH3-]O.[Na+]"}) {
    std::string joined;
    for (const Token& t : tokenize(s)) joined += t.lexeme;
    EXPECT_EQ(joined, s);
  }
}

TEST(Tokenize, ChargedAromaticBracketAtom) {
  bool found = false;
  for (const Token& t : tokenize(kFig3)) {
    if (t.kind == TokenKind::kBracketAtom) {
      EXPECT_EQ(t.element, "N");
      EXPECT_TRUE(t.aromatic);
      EXPECT_EQ(t.charge, 1);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Tokenize, BracketPayload) {
  const auto t = tokenize("[13C@@H2-2]");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].isotope, 13);
  EXPECT_EQ(t[0].element, "C");
  EXPECT_EQ(t[0].chiral, ChiralTag::kClockwise);
  EXPECT_EQ(t[0].hydrogens, 2);
  EXPECT_EQ(t[0].charge, -2);
}

TEST(Tokenize, UnterminatedBranchAtEnd) {
  try {
    tokenize("C(C");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnterminatedBranch);
    ASSERT_TRUE(e.position().has_value());
    EXPECT_EQ(*e.position(), 3u);
  }
}

TEST(Tokenize, Errors) {
  try {
    tokenize("CC?C");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownCharacter);
    EXPECT_EQ(*e.position(), 2u);
  }
  EXPECT_EQ(error_of("C[NH"), ErrorCode::kUnterminatedBracket);
  EXPECT_EQ(error_of("C%1C"), ErrorCode::kBadRingDigit);
  EXPECT_EQ(error_of(""), ErrorCode::kEmptyInput);
  EXPECT_EQ(error_of("[Cx]"), ErrorCode::kBadBracketAtom);
  EXPECT_EQ(error_of("C*"), ErrorCode::kUnsupportedFeature);
}

TEST(Parse, Errors) {
  EXPECT_EQ(error_of("C1CC"), ErrorCode::kUnclosedRing);
  EXPECT_EQ(error_of("CC="), ErrorCode::kDanglingBond);
  EXPECT_EQ(error_of("C(=C)(=C)(=C)=C"), ErrorCode::kValenceImpossible);
  EXPECT_EQ(error_of("FC=F"), ErrorCode::kValenceImpossible);
  EXPECT_EQ(error_of("CC.O"), ErrorCode::kUnsupportedFeature);
}

TEST(Parse, Ethanol) {
  const Molecule m = read_smiles("CCO");
  EXPECT_EQ(m.num_atoms(), 3);
  ASSERT_EQ(m.num_bonds(), 2);
  for (const Bond& b : m.bonds()) EXPECT_EQ(b.order, BondOrder::kSingle);
  EXPECT_EQ(m.atom(0).implicit_h, 3);
  EXPECT_EQ(m.atom(1).implicit_h, 2);
  EXPECT_EQ(m.atom(2).implicit_h, 1);
}

TEST(Parse, Cyclopropane) {
  const Molecule m = read_smiles("C1CC1");
  EXPECT_EQ(m.num_atoms(), 3);
  ASSERT_EQ(m.num_bonds(), 3);
  for (const Bond& b : m.bonds()) EXPECT_TRUE(b.in_ring);
  for (const Atom& a : m.atoms()) EXPECT_TRUE(a.in_ring);
}

TEST(Parse, AromaticDefaultBonds) {
  const Molecule m = read_smiles("c1ccccc1C");
  int aromatic = 0;
  for (const Bond& b : m.bonds()) aromatic += b.order == BondOrder::kAromatic;
  EXPECT_EQ(aromatic, 6);
  EXPECT_EQ(m.bond(m.bond_between(5, 6)).order, BondOrder::kSingle);
  EXPECT_EQ(m.atom(0).implicit_h, 1);
  EXPECT_EQ(m.atom(5).implicit_h, 0);
}

TEST(Parse, HeavyAtomCountsMatchReference) {
  for (const auto& row : testing::read_tsv("heavy_atoms.tsv")) {
    EXPECT_EQ(read_smiles(row[0]).num_atoms(), std::stoi(row[1])) << row[0];
  }
}

TEST(Parse, ExplicitHydrogensFolded) {
  const Molecule m = read_smiles("[H]OC([H])([H])[H]");
  EXPECT_EQ(m.num_atoms(), 2);
  EXPECT_EQ(m.atom(0).total_h(), 1);
  EXPECT_EQ(m.atom(1).total_h(), 3);
}

TEST(Parse, FragmentPolicy) {
  const Molecule m = read_smiles("[Na+].CC(=O)[O-]");
  EXPECT_EQ(m.num_atoms(), 4);
  EXPECT_EQ(m.atom(3).formal_charge, -1);
  EXPECT_EQ(count_fragments(parse(tokenize("C.C.CC"))), 3);
}

TEST(Parse, ChiralityAndStereo) {
  const Molecule m = read_smiles("C[C@@H](F)Cl");
  EXPECT_EQ(m.atom(1).chiral_tag, ChiralTag::kClockwise);
  const Molecule trans = read_smiles("F/C=C/F");
  const Molecule cis = read_smiles("F/C=C\\F");
  EXPECT_EQ(trans.bond(trans.bond_between(1, 2)).stereo, BondStereo::kTrans);
  EXPECT_EQ(cis.bond(cis.bond_between(1, 2)).stereo, BondStereo::kCis);
  EXPECT_EQ(read_smiles("FC=CF").bond(1).stereo, BondStereo::kNone);
}

TEST(Perception, Hybridization) {
  const Molecule m = read_smiles("CC=CC#N");
  EXPECT_EQ(m.atom(0).hybridization, Hybridization::kSP3);
  EXPECT_EQ(m.atom(1).hybridization, Hybridization::kSP2);
  EXPECT_EQ(m.atom(3).hybridization, Hybridization::kSP);
  EXPECT_EQ(m.atom(4).hybridization, Hybridization::kSP);
  EXPECT_EQ(read_smiles("O=C=O").atom(1).hybridization, Hybridization::kSP);
}

TEST(Perception, Conjugation) {
  const Molecule m = read_smiles("C=CC=CCC");
  EXPECT_TRUE(m.bond(1).conjugated);
  EXPECT_FALSE(m.bond(4).conjugated);
  EXPECT_TRUE(read_smiles("c1ccccc1").bond(0).conjugated);
}

// Brute-force ring membership: a bond is on a cycle iff its endpoints stay
// connected after the bond is removed.
bool on_cycle_oracle(const Molecule& m, int bond) {
  std::vector<bool> seen(m.num_atoms(), false);
  std::function<void(int)> visit = [&](int a) {
    seen[a] = true;
    for (const Neighbor& n : m.neighbors(a)) {
      if (n.bond != bond && !seen[n.atom]) visit(n.atom);
    }
  };
  visit(m.bond(bond).begin);
  return seen[m.bond(bond).end];
}

TEST(Perception, RingFlagsMatchOracle) {
  for (const char* s : {"C1CC2CCC1CC2", "C1CC1CC1CC1", "c1ccc2ccccc2c1CCC", kFig3, kFig4,
                        "C12C3C4C1C5C2C3C45"}) {
    const Molecule m = read_smiles(s);
    for (int b = 0; b < m.num_bonds(); ++b) {
      EXPECT_EQ(m.bond(b).in_ring, on_cycle_oracle(m, b)) << s << " bond " << b;
    }
  }
}

TEST(Perception, BicyclooctaneAllInRing) {
  const Molecule m = read_smiles("C1CC2CCC1CC2");
  for (const Bond& b : m.bonds()) EXPECT_TRUE(b.in_ring);
}

TEST(Molecule, InvariantsHold) {
  for (const char* s : {kFig3, kFig4, "CC(=O)Nc1ccc(O)cc1"}) {
    const Molecule m = read_smiles(s);
    std::set<std::pair<int, int>> seen;
    for (const Bond& b : m.bonds()) {
      EXPECT_NE(b.begin, b.end);
      EXPECT_TRUE(seen.insert({std::min(b.begin, b.end), std::max(b.begin, b.end)}).second);
      if (b.order == BondOrder::kAromatic) {
        EXPECT_TRUE(m.atom(b.begin).aromatic && m.atom(b.end).aromatic);
      }
    }
  }
}

}  // namespace
}  // namespace funqg::chem
