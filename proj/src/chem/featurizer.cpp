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

#include "funqg/featurizer.hpp"

#include <algorithm>

#include "funqg/elements.hpp"
#include "funqg/error.hpp"

namespace funqg {
namespace {

using namespace features;

int element_slot(int atomic_number) {
  switch (atomic_number) {
    case 5: return 0;
    case 6: return 1;
    case 7: return 2;
    case 8: return 3;
    case 9: return 4;
    case 14: return 5;
    case 15: return 6;
    case 16: return 7;
    case 17: return 8;
    case 35: return 9;
    case 53: return 10;
    default: return 11;
  }
}

void one_hot(Eigen::VectorXd& v, Segment seg, int slot) {
  v[seg.offset + std::clamp(slot, 0, seg.size - 1)] = 1.0;
}

}  // namespace

Eigen::VectorXd atom_features(int atom_index, const chem::Molecule& m) {
  const chem::Atom& a = m.atom(atom_index);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(kAtomWidth);
  one_hot(v, kElement, element_slot(a.atomic_number));
  one_hot(v, kDegree, a.degree);
  one_hot(v, kCharge, a.formal_charge + 2);
  one_hot(v, kChirality, static_cast<int>(a.chiral_tag));
  one_hot(v, kHydrogens, a.total_h());
  one_hot(v, kHybridization, static_cast<int>(a.hybridization));
  v[kAromaticFlag] = a.aromatic ? 1.0 : 0.0;
  v[kMass] = chem::atomic_mass(a.atomic_number) / 100.0;
  return v;
}

Eigen::VectorXd bond_features(int bond_index, const chem::Molecule& m) {
  const chem::Bond& b = m.bond(bond_index);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(kBondWidth);
  one_hot(v, kBondOrder, static_cast<int>(b.order));
  v[kConjugatedFlag] = b.conjugated ? 1.0 : 0.0;
  v[kInRingFlag] = b.in_ring ? 1.0 : 0.0;
  one_hot(v, kStereo, static_cast<int>(b.stereo));
  return v;
}

MolGraph featurize(const chem::Molecule& m) {
  if (m.num_atoms() == 0) throw Error(ErrorCode::kEmptyMolecule, m.source_smiles());
  MolGraph g;
  g.node_features.resize(m.num_atoms(), kAtomWidth);
  for (int a = 0; a < m.num_atoms(); ++a) {
    g.node_features.row(a) = atom_features(a, m).transpose();
  }
  g.edge_features.resize(m.num_bonds(), kBondWidth);
  g.edges.reserve(m.num_bonds());
  for (int b = 0; b < m.num_bonds(); ++b) {
    g.edges.push_back({m.bond(b).begin, m.bond(b).end});
    g.edge_features.row(b) = bond_features(b, m).transpose();
  }
  return g;
}

}  // namespace funqg
