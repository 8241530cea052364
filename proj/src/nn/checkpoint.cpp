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

#include "funqg/nn/checkpoint.hpp"

#include <fstream>

#include "funqg/error.hpp"

namespace funqg::nn {

nlohmann::json to_json(const ParamStore<double>& store, const nlohmann::json& manifest) {
  nlohmann::json params = nlohmann::json::array();
  for (const auto& p : store) {
    std::vector<double> values(p.value.data(), p.value.data() + p.value.size());
    params.push_back({{"name", p.name},
                      {"shape", {p.value.rows(), p.value.cols()}},
                      {"values", std::move(values)}});
  }
  return {{"format", "funqg-checkpoint"},
          {"version", kCheckpointVersion},
          {"manifest", manifest},
          {"params", std::move(params)}};
}

nlohmann::json load_values(const nlohmann::json& checkpoint, ParamStore<double>& store) {
  try {
    if (checkpoint.at("format") != "funqg-checkpoint") {
      throw Error(ErrorCode::kBadFile, "not a checkpoint");
    }
    if (checkpoint.at("version").get<int>() != kCheckpointVersion) {
      throw Error(ErrorCode::kBadFile, "unsupported checkpoint version");
    }
    const auto& params = checkpoint.at("params");
    if (static_cast<int>(params.size()) != store.size()) {
      throw Error(ErrorCode::kShapeMismatch, "checkpoint has " + std::to_string(params.size()) +
                                                 " parameters, model has " +
                                                 std::to_string(store.size()));
    }
    for (const auto& entry : params) {
      const std::string name = entry.at("name");
      auto& p = store[store.index(name)];
      const auto shape = entry.at("shape").get<std::vector<long>>();
      const auto values = entry.at("values").get<std::vector<double>>();
      if (shape.size() != 2 || shape[0] != p.value.rows() || shape[1] != p.value.cols() ||
          static_cast<long>(values.size()) != shape[0] * shape[1]) {
        throw Error(ErrorCode::kShapeMismatch, "parameter " + name + " has the wrong shape");
      }
      std::copy(values.begin(), values.end(), p.value.data());
    }
    return checkpoint.at("manifest");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadFile, std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::string& path, const ParamStore<double>& store,
                     const nlohmann::json& manifest) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kBadFile, "cannot write " + path);
  out << to_json(store, manifest).dump() << '\n';
}

nlohmann::json read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kBadFile, "cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadFile, path + ": " + e.what());
  }
}

}  // namespace funqg::nn
