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

#ifndef FUNQG_ELEMENTS_HPP
#define FUNQG_ELEMENTS_HPP

#include <optional>
#include <string_view>

namespace funqg::chem {

/// Atomic number for a capitalised element symbol ("C", "Cl"), if known.
std::optional<int> atomic_number(std::string_view symbol);
std::string_view element_symbol(int atomic_number);
/// Standard atomic weight in daltons; 0 for unknown numbers.
double atomic_mass(int atomic_number);

/// Valence used for implicit hydrogens of organic-subset atoms, if defined.
std::optional<int> default_valence(int atomic_number);
/// Largest total bond order accepted before a parse is rejected; nullopt means unchecked.
std::optional<int> max_valence(int atomic_number);

}  // namespace funqg::chem

#endif  // FUNQG_ELEMENTS_HPP
