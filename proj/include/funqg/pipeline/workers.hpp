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

#ifndef FUNQG_PIPELINE_WORKERS_HPP
#define FUNQG_PIPELINE_WORKERS_HPP

#include <functional>

namespace funqg::pipeline {

/// Worker threads to use: FUNQG_WORKERS if set to a positive integer, else
/// the hardware concurrency, never less than one.
int worker_count();

/// Calls fn(i) for i in [0, n) on up to `workers` threads. Work is handed out
/// by index, so results written to slot i do not depend on thread count.
/// The first exception thrown by any call is rethrown after all threads join.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace funqg::pipeline

#endif  // FUNQG_PIPELINE_WORKERS_HPP
