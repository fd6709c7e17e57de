// Copyright 2026 The wqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WQED_PARALLEL_HPP_
#define WQED_PARALLEL_HPP_

namespace wqed {

// Selects between the OpenMP kernels and the plain serial loops. Both paths
// reduce partial sums in the same fixed order, so results are bit-identical.
enum class Exec { kSerial, kParallel };

// Number of OpenMP threads used by parallel kernels.
void set_workers(int n);
int workers();

// Reads WQED_WORKERS; returns `fallback` when unset or invalid.
int workers_from_env(int fallback);

}  // namespace wqed

#endif  // WQED_PARALLEL_HPP_
