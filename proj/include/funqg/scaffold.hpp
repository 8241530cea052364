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

#ifndef FUNQG_SCAFFOLD_HPP
#define FUNQG_SCAFFOLD_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "funqg/molecule.hpp"

namespace funqg {

/// 64-bit digest of a ring scaffold. Ring-free molecules share kEmpty.
struct ScaffoldKey {
  static constexpr std::uint64_t kEmpty = 0;
  std::uint64_t value = kEmpty;

  bool empty() const { return value == kEmpty; }
  std::string hex() const;

  friend auto operator<=>(const ScaffoldKey&, const ScaffoldKey&) = default;
};

/// Atoms of the ring systems and the linkers between them, plus atoms double
/// bonded to those. Sorted; empty when the molecule has no ring.
std::vector<int> scaffold_atoms(const chem::Molecule& m);

/// Weisfeiler-Lehman style refinement over element, aromaticity and bond
/// order of the scaffold atoms. Chirality and charges are ignored.
ScaffoldKey murcko_scaffold(const chem::Molecule& m);

enum class Partition { kTrain = 0, kValid = 1, kTest = 2 };

std::string_view to_string(Partition p);

struct SplitAssignment {
  std::vector<int> train;
  std::vector<int> valid;
  std::vector<int> test;
  std::uint64_t seed = 0;
  std::array<double, 3> ratios{0.8, 0.1, 0.1};

  /// Partition of every index in [0, n).
  std::vector<Partition> labels(int n) const;
};

/// Balanced scaffold split. Groups bigger than half the valid or test budget
/// are placed first, then the remaining groups, each list shuffled by `seed`;
/// groups fill train, then valid, then test.
///
/// Throws kBadRatios for non-positive ratios or a sum away from 1 and
/// kDegenerateSplit when a partition would be empty.
SplitAssignment scaffold_split(std::span<const ScaffoldKey> keys, std::uint64_t seed,
                               std::array<double, 3> ratios = {0.8, 0.1, 0.1});

}  // namespace funqg

#endif  // FUNQG_SCAFFOLD_HPP
