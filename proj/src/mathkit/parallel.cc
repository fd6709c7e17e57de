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


#include <cstdlib>
#include <string>

#include <omp.h>

#include "wqed/parallel.hpp"

namespace wqed {

void set_workers(int n) { omp_set_num_threads(n < 1 ? 1 : n); }

int workers() { return omp_get_max_threads(); }

int workers_from_env(int fallback) {
  const char* env = std::getenv("WQED_WORKERS");
  if (env == nullptr) return fallback;
  try {
    const int n = std::stoi(env);
    return n >= 1 ? n : fallback;
  } catch (...) {
    return fallback;
  }
}

}  // namespace wqed
