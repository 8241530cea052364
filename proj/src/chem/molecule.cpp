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

#include "funqg/molecule.hpp"

#include <utility>

namespace funqg::chem {

Molecule::Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds,
                   std::string source_smiles)
    : atoms_(std::move(atoms)),
      bonds_(std::move(bonds)),
      source_smiles_(std::move(source_smiles)) {
  rebuild();
}

void Molecule::rebuild() {
  adjacency_.assign(atoms_.size(), {});
  for (int b = 0; b < num_bonds(); ++b) {
    adjacency_[bonds_[b].begin].push_back({bonds_[b].end, b});
    adjacency_[bonds_[b].end].push_back({bonds_[b].begin, b});
  }
  for (int a = 0; a < num_atoms(); ++a) {
    int heavy = 0;
    for (const Neighbor& n : adjacency_[a]) heavy += atoms_[n.atom].atomic_number != 1;
    atoms_[a].degree = heavy;
  }
}

int Molecule::bond_between(int a, int b) const {
  for (const Neighbor& n : adjacency_[a]) {
    if (n.atom == b) return n.bond;
  }
  return -1;
}

int valence_contribution(BondOrder order) {
  switch (order) {
    case BondOrder::kSingle: return 1;
    case BondOrder::kDouble: return 2;
    case BondOrder::kTriple: return 3;
    case BondOrder::kAromatic: return 1;
  }
  return 1;
}

}  // namespace funqg::chem
