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

#ifndef FUNQG_MOLECULE_HPP
#define FUNQG_MOLECULE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace funqg::chem {

enum class ChiralTag { kNone, kCounterClockwise, kClockwise };  // none, @, @@
enum class BondOrder { kSingle, kDouble, kTriple, kAromatic };
enum class BondStereo { kNone, kCis, kTrans };
enum class Hybridization { kSP, kSP2, kSP3, kOther };

struct Atom {
  std::string element;  // capitalised symbol
  int atomic_number = 0;
  bool aromatic = false;
  int formal_charge = 0;
  int isotope = 0;
  std::optional<int> explicit_h;  // set for bracket atoms only
  int implicit_h = 0;             // filled by assign_implicit_hydrogens
  int attached_h = 0;             // explicit [H] atoms folded into this atom
  ChiralTag chiral_tag = ChiralTag::kNone;
  bool in_ring = false;
  Hybridization hybridization = Hybridization::kOther;
  int degree = 0;  // heavy-atom neighbours

  int total_h() const { return implicit_h + attached_h; }
  bool is_carbon() const { return atomic_number == 6; }
};

struct Bond {
  int begin = 0;  // atom written first
  int end = 0;
  BondOrder order = BondOrder::kSingle;
  bool in_ring = false;
  BondStereo stereo = BondStereo::kNone;
  bool conjugated = false;
  char direction = 0;  // '/' or '\\' as written between begin and end, else 0

  int other(int atom) const { return atom == begin ? end : begin; }
};

struct Neighbor {
  int atom;
  int bond;
};

/// Heavy-atom molecular graph. Indices follow the order atoms appear in the SMILES.
class Molecule {
 public:
  Molecule() = default;
  Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds, std::string source_smiles);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::vector<Atom>& atoms() { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  std::vector<Bond>& bonds() { return bonds_; }
  const std::string& source_smiles() const { return source_smiles_; }

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  const Atom& atom(int i) const { return atoms_[i]; }
  const Bond& bond(int i) const { return bonds_[i]; }
  std::span<const Neighbor> neighbors(int atom) const { return adjacency_[atom]; }
  /// Bond index joining a and b, or -1.
  int bond_between(int a, int b) const;

  /// Recomputes adjacency and heavy-atom degrees after atoms/bonds were edited.
  void rebuild();

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::string source_smiles_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Bond order contribution used by valence bookkeeping (aromatic counts 1).
int valence_contribution(BondOrder order);

}  // namespace funqg::chem

#endif  // FUNQG_MOLECULE_HPP
