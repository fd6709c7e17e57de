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

#ifndef WQED_DYNAMICS_HPP_
#define WQED_DYNAMICS_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wqed/mathkit.hpp"
#include "wqed/parallel.hpp"

namespace wqed {

// One point in (delay, detuning) space plus truncation controls. Time is
// measured in units of the single-emitter lifetime 1/gamma throughout.
struct SystemParams {
  double eta = 1.0;    // round-trip delay gamma d / v
  double delta = 0.0;  // detuning (omega_1 - omega_2) / gamma
  double beta = 1.0;   // waveguide coupling efficiency
  double phi2 = 0.0;   // propagation phase of emitter 2, modulo 2 pi
  std::optional<double> omega0_tilde;  // mean frequency; derived when unset
  int j_cut = 250;
  Complex c1_0{1.0, 0.0};
  Complex c2_0{0.0, 0.0};

  // phi2 reduced to [-pi, pi) on a fixed grid so that phi2 and phi2 + 2 pi
  // give identical results.
  double phase2() const;
  // Self-consistent phase of emitter 1: phase2() + delta * eta.
  double phase1() const;
  double omega0() const;

  // Throws ConfigError naming the offending field.
  void validate() const;
  std::string describe() const;
};

struct PoleEntry {
  int sigma = 1;      // +1 or -1
  int k = 0;          // Lambert-W branch
  Complex seed;       // pole at zero detuning
  Complex shift;      // detuning-induced shift
  Complex pole;       // seed + shift
  Complex residue;
};

struct PoleSet {
  int emitter = 1;
  std::vector<PoleEntry> entries;
};

enum class Method { kSeries, kPoles, kOde };
const char* method_name(Method m);

struct AmplitudeTrace {
  std::vector<double> times;
  std::vector<Complex> c1;
  std::vector<Complex> c2;
  Method method = Method::kSeries;
};

// Characteristic function of emitter m and its s-derivative:
//   f_m(s) = (s + 1/2)(s -+ i delta + 1/2) - beta^2/4 exp(2 i phi_m - 2 eta s).
Complex characteristic(const SystemParams& p, int emitter, Complex s);
Complex characteristic_slope(const SystemParams& p, int emitter, Complex s);

// Poles of emitter m for all branches |k| <= j_cut, both signs.
PoleSet find_poles(const SystemParams& p, int emitter, Exec exec = Exec::kParallel);

// Fills residue fields from the Laplace numerator over f_m'.
void compute_residues(const SystemParams& p, PoleSet& poles);

// find_poles followed by compute_residues for both emitters.
std::pair<PoleSet, PoleSet> pole_expansion(const SystemParams& p,
                                           Exec exec = Exec::kParallel);

Complex pole_sum(const PoleSet& poles, double t);

// Exact finite series; c2 vanishes identically before t = eta.
std::pair<Complex, Complex> series_point(const SystemParams& p, double t);

AmplitudeTrace amplitude_series(const SystemParams& p, const std::vector<double>& times,
                                Exec exec = Exec::kParallel);
AmplitudeTrace amplitude_poles(const SystemParams& p, const std::vector<double>& times,
                               Exec exec = Exec::kParallel);
AmplitudeTrace amplitude_poles(const PoleSet& e1, const PoleSet& e2,
                               const std::vector<double>& times,
                               Exec exec = Exec::kParallel);

// Fixed-step RK4 on the delay equations. The step is reduced so that eta is
// a whole number of steps; the returned grid uses that step.
AmplitudeTrace amplitude_ode(const SystemParams& p, double t_max, double dt);

// Right-hand side of the delay equations given current and retarded amplitudes.
std::pair<Complex, Complex> amplitude_rates(const SystemParams& p, double t,
                                            Complex c1, Complex c2,
                                            Complex c1_retarded, Complex c2_retarded);

}  // namespace wqed

#endif  // WQED_DYNAMICS_HPP_
