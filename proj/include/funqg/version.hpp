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

#ifndef FUNQG_VERSION_HPP
#define FUNQG_VERSION_HPP

#include <string_view>

namespace funqg {

#ifndef FUNQG_VERSION
#define FUNQG_VERSION "0.0.0"
#endif

inline constexpr std::string_view kToolVersion = FUNQG_VERSION;

}  // namespace funqg

#endif  // FUNQG_VERSION_HPP
