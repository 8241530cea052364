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

// Checkpoint layout (JSON):
//   {"format": "funqg-checkpoint", "version": 1,
//    "manifest": {...caller supplied...},
//    "params": [{"name": "W_i", "shape": [rows, cols], "values": [row-major...]}, ...]}
// Values are written with round-trip precision so a reload is bit-exact.

#ifndef FUNQG_NN_CHECKPOINT_HPP
#define FUNQG_NN_CHECKPOINT_HPP

#include <string>

#include "funqg/nn/param_store.hpp"
#include "json.hpp"

namespace funqg::nn {

inline constexpr int kCheckpointVersion = 1;

nlohmann::json to_json(const ParamStore<double>& store, const nlohmann::json& manifest);

/// Copies checkpoint values into `store`, whose names and shapes must match
/// (kShapeMismatch otherwise). Returns the manifest.
nlohmann::json load_values(const nlohmann::json& checkpoint, ParamStore<double>& store);

void save_checkpoint(const std::string& path, const ParamStore<double>& store,
                     const nlohmann::json& manifest);
nlohmann::json read_checkpoint(const std::string& path);

}  // namespace funqg::nn

#endif  // FUNQG_NN_CHECKPOINT_HPP
