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

#ifndef WQED_SPECTRUM_HPP_
#define WQED_SPECTRUM_HPP_

#include <string>
#include <vector>

#include "wqed/dynamics.hpp"
#include "wqed/parallel.hpp"

namespace wqed {

// Steady-state emitter responses at frequency offset omega_bar from the mean
// frequency. f1 * d_denom and f2 * d_denom are the bare numerators.
struct ResponseValue {
  double omega_bar = 0.0;
  Complex f1;
  Complex f2;
  Complex d_denom;
};

struct SpectrumGrid {
  std::vector<double> omega_bar;
  std::vector<double> g;
};

struct PeakPrediction {
  int n = 0;
  double omega_plus = 0.0;   // offset from the mean frequency
  double omega_minus = 0.0;
};

enum class Regime { kLargeDetuning, kSmallDetuning };
const char* regime_name(Regime r);

struct Alignment {
  int n = 0;
  double eta = 0.0;
  Regime regime = Regime::kLargeDetuning;
};

// Throws NumericalError when |D| < 1e-14 (real pole on the frequency axis).
ResponseValue response(const SystemParams& p, double omega_bar);

// G at one frequency. At a bound-state frequency the responses diverge but G
// stays finite; there the symmetric limit is returned.
double spectrum_point(const SystemParams& p, double omega_bar);

// Radiated spectrum on an ascending grid; g >= 0.
SpectrumGrid spectrum_g(const SystemParams& p, const std::vector<double>& grid,
                        Exec exec = Exec::kParallel);

// [-3 - delta/2, 3 + delta/2] with 4001 points.
std::vector<double> default_spectrum_grid(const SystemParams& p);

// Cavity-mode peak estimates for branches n_lo..n_hi; requires eta >= 1.
std::vector<PeakPrediction> peak_predictions(const SystemParams& p, int n_lo, int n_hi);

// Delays at which emitter 1 sits on a cavity resonance. Both families are
// returned for each n: (n + 1/2) pi / delta for large detuning and
// n pi / delta for small detuning. n = 0 has no small-detuning entry.
std::vector<Alignment> resonance_alignment(double delta, int n_lo, int n_hi);

}  // namespace wqed

#endif  // WQED_SPECTRUM_HPP_
