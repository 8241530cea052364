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

#ifndef FUNQG_ERROR_HPP
#define FUNQG_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace funqg {

/// Every failure the library reports maps to exactly one of these codes.
enum class ErrorCode {
  // smiles
  kUnknownCharacter,
  kUnterminatedBracket,
  kUnterminatedBranch,
  kBadRingDigit,
  kUnclosedRing,
  kDanglingBond,
  kValenceImpossible,
  kUnsupportedFeature,
  kBadBracketAtom,
  kEmptyInput,
  // graphs
  kEmptyMolecule,
  kOverlappingFGs,
  kFGNotComponent,
  kEmptyDataset,
  kEmptyGraph,
  kInvalidPartition,
  // splitting
  kDegenerateSplit,
  kBadRatios,
  // numerics
  kShapeMismatch,
  kNonFiniteValue,
  kNonFiniteLoss,
  kAllMasked,
  kSingleClass,
  // pipeline
  kMissingColumn,
  kBadConfig,
  kBadFile,
  kManifestMismatch,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// 0-based character offset for parser errors.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace funqg

#endif  // FUNQG_ERROR_HPP
