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

#include "funqg/error.hpp"

namespace funqg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownCharacter: return "UnknownCharacter";
    case ErrorCode::kUnterminatedBracket: return "UnterminatedBracket";
    case ErrorCode::kUnterminatedBranch: return "UnterminatedBranch";
    case ErrorCode::kBadRingDigit: return "BadRingDigit";
    case ErrorCode::kUnclosedRing: return "UnclosedRing";
    case ErrorCode::kDanglingBond: return "DanglingBond";
    case ErrorCode::kValenceImpossible: return "ValenceImpossible";
    case ErrorCode::kUnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::kBadBracketAtom: return "BadBracketAtom";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyMolecule: return "EmptyMolecule";
    case ErrorCode::kOverlappingFGs: return "OverlappingFGs";
    case ErrorCode::kFGNotComponent: return "FGNotComponent";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kInvalidPartition: return "InvalidPartition";
    case ErrorCode::kDegenerateSplit: return "DegenerateSplit";
    case ErrorCode::kBadRatios: return "BadRatios";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kAllMasked: return "AllMasked";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kBadFile: return "BadFile";
    case ErrorCode::kManifestMismatch: return "ManifestMismatch";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<std::size_t> position) {
  std::string out(to_string(code));
  if (position) out += " at offset " + std::to_string(*position);
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(decorate(code, message, position)),
      code_(code),
      position_(position) {}

}  // namespace funqg
