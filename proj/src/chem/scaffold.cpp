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

#include "funqg/scaffold.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "funqg/error.hpp"
#include "funqg/hash.hpp"
#include "funqg/nn/random.hpp"

namespace funqg {

std::string ScaffoldKey::hex() const { return to_hex(value); }

std::vector<int> scaffold_atoms(const chem::Molecule& m) {
  const int n = m.num_atoms();
  std::vector<bool> kept(n, true);
  std::vector<int> degree(n, 0);
  for (int a = 0; a < n; ++a) degree[a] = static_cast<int>(m.neighbors(a).size());

  std::vector<int> leaves;
  for (int a = 0; a < n; ++a) {
    if (degree[a] <= 1) leaves.push_back(a);
  }
  while (!leaves.empty()) {
    const int a = leaves.back();
    leaves.pop_back();
    if (!kept[a]) continue;
    kept[a] = false;
    for (const chem::Neighbor& nb : m.neighbors(a)) {
      if (kept[nb.atom] && --degree[nb.atom] <= 1) leaves.push_back(nb.atom);
    }
  }

  std::vector<bool> core = kept;
  for (int a = 0; a < n; ++a) {
    if (!core[a]) continue;
    for (const chem::Neighbor& nb : m.neighbors(a)) {
      if (!core[nb.atom] && m.bond(nb.bond).order == chem::BondOrder::kDouble) kept[nb.atom] = true;
    }
  }
  std::vector<int> out;
  for (int a = 0; a < n; ++a) {
    if (kept[a]) out.push_back(a);
  }
  return out;
}

ScaffoldKey murcko_scaffold(const chem::Molecule& m) {
  const std::vector<int> atoms = scaffold_atoms(m);
  if (atoms.empty()) return {};
  std::vector<int> local(m.num_atoms(), -1);
  for (int i = 0; i < static_cast<int>(atoms.size()); ++i) local[atoms[i]] = i;

  std::vector<std::uint64_t> label(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const chem::Atom& a = m.atom(atoms[i]);
    label[i] = hash_combine(static_cast<std::uint64_t>(a.atomic_number), a.aromatic ? 1 : 0);
  }
  std::vector<std::uint64_t> next(atoms.size());
  std::vector<std::uint64_t> around;
  for (std::size_t round = 0; round < atoms.size(); ++round) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      around.clear();
      for (const chem::Neighbor& nb : m.neighbors(atoms[i])) {
        if (local[nb.atom] < 0) continue;
        around.push_back(hash_combine(static_cast<std::uint64_t>(m.bond(nb.bond).order),
                                      label[local[nb.atom]]));
      }
      std::sort(around.begin(), around.end());
      std::uint64_t h = label[i];
      for (std::uint64_t x : around) h = hash_combine(h, x);
      next[i] = h;
    }
    // Stop once the partition of atoms into label classes no longer refines.
    std::vector<std::uint64_t> a = label, b = next;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto classes_before = std::unique(a.begin(), a.end()) - a.begin();
    const auto classes_after = std::unique(b.begin(), b.end()) - b.begin();
    label.swap(next);
    if (classes_after == classes_before && round > 0) break;
  }
  std::sort(label.begin(), label.end());
  std::uint64_t key = hash_combine(0x5caff01dULL, label.size());
  for (std::uint64_t x : label) key = hash_combine(key, x);
  if (key == ScaffoldKey::kEmpty) key = 1;
  return {key};
}

std::string_view to_string(Partition p) {
  switch (p) {
    case Partition::kTrain: return "train";
    case Partition::kValid: return "valid";
    case Partition::kTest: return "test";
  }
  return "?";
}

std::vector<Partition> SplitAssignment::labels(int n) const {
  std::vector<Partition> out(n, Partition::kTrain);
  for (int i : valid) out[i] = Partition::kValid;
  for (int i : test) out[i] = Partition::kTest;
  return out;
}

SplitAssignment scaffold_split(std::span<const ScaffoldKey> keys, std::uint64_t seed,
                               std::array<double, 3> ratios) {
  for (double r : ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::kBadRatios, "ratios must be positive");
  }
  if (std::abs(ratios[0] + ratios[1] + ratios[2] - 1.0) > 1e-9) {
    throw Error(ErrorCode::kBadRatios, "ratios must sum to 1");
  }
  const int n = static_cast<int>(keys.size());
  const int train_budget = static_cast<int>(std::floor(ratios[0] * n));
  const int valid_budget = static_cast<int>(std::floor(ratios[1] * n));
  const int test_budget = n - train_budget - valid_budget;

  // Groups in order of first appearance so the pre-shuffle order is fixed.
  std::map<ScaffoldKey, int> group_of;
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < n; ++i) {
    auto [it, inserted] = group_of.try_emplace(keys[i], static_cast<int>(groups.size()));
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  std::vector<std::vector<int>> big, small;
  for (auto& g : groups) {
    const double size = static_cast<double>(g.size());
    if (size > valid_budget / 2.0 || size > test_budget / 2.0) {
      big.push_back(std::move(g));
    } else {
      small.push_back(std::move(g));
    }
  }
  nn::Rng rng(seed);
  rng.shuffle(big);
  rng.shuffle(small);

  SplitAssignment out;
  out.seed = seed;
  out.ratios = ratios;
  auto place = [&](const std::vector<int>& g) {
    const int size = static_cast<int>(g.size());
    std::vector<int>* dst = &out.test;
    if (static_cast<int>(out.train.size()) + size <= train_budget) {
      dst = &out.train;
    } else if (static_cast<int>(out.valid.size()) + size <= valid_budget) {
      dst = &out.valid;
    }
    dst->insert(dst->end(), g.begin(), g.end());
  };
  for (const auto& g : big) place(g);
  for (const auto& g : small) place(g);
  for (auto* part : {&out.train, &out.valid, &out.test}) std::sort(part->begin(), part->end());

  if (out.train.empty() || out.valid.empty() || out.test.empty()) {
    throw Error(ErrorCode::kDegenerateSplit,
                "scaffold groups leave a partition empty (train " + std::to_string(out.train.size()) +
                    ", valid " + std::to_string(out.valid.size()) + ", test " +
                    std::to_string(out.test.size()) + ")");
  }
  return out;
}

}  // namespace funqg
