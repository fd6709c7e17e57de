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

// Serial versus OpenMP timings for the parallel kernels.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "wqed/dynamics.hpp"
#include "wqed/parallel.hpp"
#include "wqed/qfi.hpp"
#include "wqed/spectrum.hpp"

namespace {

// Best of `reps` wall-clock runs in milliseconds.
double best_ms(const std::function<double()>& fn, int reps, double& sink) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    sink += fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, const std::function<double(wqed::Exec)>& fn, int reps) {
  double sink_s = 0.0, sink_p = 0.0;
  const double s = best_ms([&] { return fn(wqed::Exec::kSerial); }, reps, sink_s);
  const double p = best_ms([&] { return fn(wqed::Exec::kParallel); }, reps, sink_p);
  const bool same = sink_s == sink_p;
  std::printf("%-24s %10.2f %10.2f %8.2fx  %s\n", name, s, p, s / p,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  wqed::set_workers(wqed::workers_from_env(omp_get_max_threads()));
  std::printf("threads: %d\n", wqed::workers());
  std::printf("%-24s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  wqed::SystemParams p;
  p.eta = 4.0;
  p.delta = 1.0;
  p.j_cut = 250;

  report("find_poles", [&](wqed::Exec e) { return wqed::find_poles(p, 1, e).entries[7].pole.real(); },
         5);

  std::vector<double> times;
  for (int i = 0; i <= 2000; ++i) times.push_back(0.01 * i);
  report("amplitude_series", [&](wqed::Exec e) {
    return std::abs(wqed::amplitude_series(p, times, e).c1.back());
  }, 3);
  report("amplitude_poles", [&](wqed::Exec e) {
    return std::abs(wqed::amplitude_poles(p, times, e).c1.back());
  }, 3);

  std::vector<double> grid;
  for (int i = 0; i <= 8000; ++i) grid.push_back(-4.0 + 1e-3 * i);
  report("spectrum_g", [&](wqed::Exec e) { return wqed::spectrum_g(p, grid, e).g[4000]; }, 3);

  report("qfi_model", [&](wqed::Exec e) {
    return wqed::QfiModel(p, e).qfi(100.0, wqed::Exec::kSerial).h;
  }, 3);
  const wqed::QfiModel model(p);
  report("qfi_pair_sum", [&](wqed::Exec e) { return model.qfi(100.0, e).h; }, 5);
  return 0;
}
