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

#ifndef FUNQG_SMILES_HPP
#define FUNQG_SMILES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "funqg/molecule.hpp"

namespace funqg::chem {

enum class TokenKind {
  kOrganicAtom,
  kBracketAtom,
  kBond,
  kRingClosure,
  kBranchOpen,
  kBranchClose,
  kDot,
};

struct Token {
  TokenKind kind = TokenKind::kOrganicAtom;
  std::size_t offset = 0;  // 0-based position of the lexeme in the input
  std::string lexeme;

  // Atom payload.
  std::string element;
  bool aromatic = false;
  int charge = 0;
  int hydrogens = 0;  // bracket atoms only
  int isotope = 0;
  ChiralTag chiral = ChiralTag::kNone;

  char bond_symbol = 0;  // one of - = # : / \ for kBond
  int ring_number = -1;  // 0-99 for kRingClosure
};

/// Lexes an ASCII SMILES string. Bracket atoms are fully decoded and
/// parentheses must balance.
///
/// Throws Error with kEmptyInput, kUnknownCharacter, kUnterminatedBracket,
/// kUnterminatedBranch, kBadRingDigit, kBadBracketAtom or kUnsupportedFeature;
/// every error carries the 0-based offset of the offending character.
std::vector<Token> tokenize(std::string_view smiles);

/// Builds atoms and bonds from a token stream (branches, ring closures,
/// default single/aromatic bonds, stereo markers). Explicit neutral hydrogen
/// atoms bonded to a heavy atom are folded into that atom's hydrogen count.
/// Multi-fragment input is returned whole; see keep_largest_fragment.
Molecule parse(const std::vector<Token>& tokens, std::string source_smiles = {});

/// Ring membership from bridge detection: a bond is in a ring iff it is not a
/// bridge. Aromatic bonds outside rings are demoted to single.
Molecule perceive_rings(Molecule m);

/// implicit_h = max(0, default_valence - bond_order_sum - aromatic_penalty)
/// for organic-subset atoms; bracket atoms trust their written H count.
Molecule assign_implicit_hydrogens(Molecule m);

Molecule perceive_hybridization(Molecule m);

/// Conjugation flags and cis/trans tags from '/' '\' markers.
Molecule perceive_bond_flags(Molecule m);

/// Number of disconnected fragments.
int count_fragments(const Molecule& m);

/// Keeps the fragment with the most heavy atoms (ties: the first written).
Molecule keep_largest_fragment(const Molecule& m);

enum class FragmentPolicy { kReject, kKeepLargest };

struct ReadOptions {
  FragmentPolicy fragments = FragmentPolicy::kKeepLargest;
};

/// tokenize + parse + fragment policy + every perception pass.
Molecule read_smiles(std::string_view smiles, const ReadOptions& options = {});

}  // namespace funqg::chem

#endif  // FUNQG_SMILES_HPP
