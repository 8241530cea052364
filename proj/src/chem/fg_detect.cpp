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

#include "funqg/fg_detect.hpp"

#include <algorithm>

namespace funqg {
namespace {

using chem::BondOrder;

constexpr int kCarbon = 6;

bool is_hetero(const chem::Atom& a) { return a.atomic_number != kCarbon && a.atomic_number != 1; }

bool is_aliphatic_ons(const chem::Atom& a) {
  return !a.aromatic && (a.atomic_number == 7 || a.atomic_number == 8 || a.atomic_number == 16);
}

bool is_multiple(BondOrder o) { return o == BondOrder::kDouble || o == BondOrder::kTriple; }

}  // namespace

std::set<int> mark_atoms(const chem::Molecule& m) {
  std::set<int> marked;
  for (int a = 0; a < m.num_atoms(); ++a) {
    const chem::Atom& atom = m.atom(a);
    if (is_hetero(atom)) marked.insert(a);
  }

  for (const chem::Bond& b : m.bonds()) {
    if (!is_multiple(b.order)) continue;
    const chem::Atom& x = m.atom(b.begin);
    const chem::Atom& y = m.atom(b.end);
    // Multiple bond from a non-aromatic atom to a heteroatom.
    if (!x.aromatic && y.atomic_number != kCarbon) marked.insert(b.begin);
    if (!y.aromatic && x.atomic_number != kCarbon) marked.insert(b.end);
    // Non-aromatic C=C / C#C.
    if (x.atomic_number == kCarbon && y.atomic_number == kCarbon && !x.aromatic && !y.aromatic) {
      marked.insert(b.begin);
      marked.insert(b.end);
    }
  }

  for (int a = 0; a < m.num_atoms(); ++a) {
    const chem::Atom& atom = m.atom(a);
    if (atom.atomic_number != kCarbon || atom.aromatic) continue;
    if (atom.degree + atom.total_h() != 4) continue;
    int singles = 0;
    for (const chem::Neighbor& n : m.neighbors(a)) {
      singles += m.bond(n.bond).order == BondOrder::kSingle && is_aliphatic_ons(m.atom(n.atom));
    }
    if (singles >= 2) marked.insert(a);
  }

  // Three-membered rings: heteroatom plus two bonded aliphatic carbons.
  for (int h = 0; h < m.num_atoms(); ++h) {
    if (!is_aliphatic_ons(m.atom(h))) continue;
    const auto nbrs = m.neighbors(h);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const int c1 = nbrs[i].atom;
        const int c2 = nbrs[j].atom;
        const chem::Atom& a1 = m.atom(c1);
        const chem::Atom& a2 = m.atom(c2);
        if (a1.atomic_number != kCarbon || a2.atomic_number != kCarbon || a1.aromatic ||
            a2.aromatic) {
          continue;
        }
        const auto single_or_aromatic = [](BondOrder o) {
          return o == BondOrder::kSingle || o == BondOrder::kAromatic;
        };
        const int ring_bond = m.bond_between(c1, c2);
        if (ring_bond < 0 || !single_or_aromatic(m.bond(ring_bond).order) ||
            !single_or_aromatic(m.bond(nbrs[i].bond).order) ||
            !single_or_aromatic(m.bond(nbrs[j].bond).order)) {
          continue;
        }
        marked.insert({h, c1, c2});
      }
    }
  }
  return marked;
}

std::vector<FunctionalGroup> extract_fgs(const chem::Molecule& m, const std::set<int>& marked) {
  std::vector<FunctionalGroup> groups;
  std::vector<bool> seen(m.num_atoms(), false);
  for (int start : marked) {  // ascending, so groups come out ordered by smallest member
    if (seen[start]) continue;
    FunctionalGroup g;
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      g.atom_indices.push_back(a);
      for (const chem::Neighbor& n : m.neighbors(a)) {
        if (!seen[n.atom] && marked.count(n.atom)) {
          seen[n.atom] = true;
          stack.push_back(n.atom);
        }
      }
    }
    std::sort(g.atom_indices.begin(), g.atom_indices.end());
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace funqg
