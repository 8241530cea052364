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

#ifndef FUNQG_FEATURIZER_HPP
#define FUNQG_FEATURIZER_HPP

#include <Eigen/Core>
#include <array>

#include "funqg/graph.hpp"
#include "funqg/molecule.hpp"

namespace funqg {

/// Featurized molecular graph: one row per atom, one row per bond, edges in
/// bond order.
using MolGraph = FeatureGraph;

namespace features {

inline constexpr int kAtomWidth = 37;
inline constexpr int kBondWidth = 9;

struct Segment {
  int offset;
  int size;
};

// Atom layout.
inline constexpr Segment kElement{0, 12};  // B C N O F Si P S Cl Br I other
inline constexpr Segment kDegree{12, 6};   // 0..5
inline constexpr Segment kCharge{18, 5};   // -2..+2
inline constexpr Segment kChirality{23, 3};
inline constexpr Segment kHydrogens{26, 5};  // 0..4
inline constexpr Segment kHybridization{31, 4};
inline constexpr int kAromaticFlag = 35;
inline constexpr int kMass = 36;  // atomic mass / 100

inline constexpr std::array<Segment, 6> kAtomOneHots{kElement,   kDegree,        kCharge,
                                                     kChirality, kHydrogens, kHybridization};

// Bond layout.
inline constexpr Segment kBondOrder{0, 4};  // single double triple aromatic
inline constexpr int kConjugatedFlag = 4;
inline constexpr int kInRingFlag = 5;
inline constexpr Segment kStereo{6, 3};  // none cis trans

inline constexpr std::array<Segment, 2> kBondOneHots{kBondOrder, kStereo};

}  // namespace features

Eigen::VectorXd atom_features(int atom_index, const chem::Molecule& m);
Eigen::VectorXd bond_features(int bond_index, const chem::Molecule& m);

/// Throws Error(kEmptyMolecule) for a molecule without atoms.
MolGraph featurize(const chem::Molecule& m);

}  // namespace funqg

#endif  // FUNQG_FEATURIZER_HPP
