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

#ifndef FUNQG_FG_DETECT_HPP
#define FUNQG_FG_DETECT_HPP

#include <set>
#include <vector>

#include "funqg/molecule.hpp"

namespace funqg {

/// A connected set of marked heavy atoms. Members are sorted ascending.
struct FunctionalGroup {
  std::vector<int> atom_indices;

  friend bool operator==(const FunctionalGroup&, const FunctionalGroup&) = default;
};

// Marks atoms with Ertl's rules:
//   1. every heteroatom;
//   2. non-aromatic atoms double/triple bonded to a heteroatom;
//   3. both carbons of non-aromatic C=C and C#C bonds;
//   4. sp3 carbons with single bonds to two or more aliphatic O/N/S (acetals);
//   5. every atom of oxirane, aziridine and thiirane rings.
std::set<int> mark_atoms(const chem::Molecule& m);

/// Connected components of the subgraph induced by `marked`, ordered by
/// smallest member.
std::vector<FunctionalGroup> extract_fgs(const chem::Molecule& m, const std::set<int>& marked);

inline std::vector<FunctionalGroup> detect_functional_groups(const chem::Molecule& m) {
  return extract_fgs(m, mark_atoms(m));
}

}  // namespace funqg

#endif  // FUNQG_FG_DETECT_HPP
