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

#ifndef WQED_FIELDSPACE_HPP_
#define WQED_FIELDSPACE_HPP_

#include <numbers>

#include "wqed/dynamics.hpp"

namespace wqed {

// Field-probability normalization. Positions are measured in units of v/gamma,
// and with this value the field between the emitters carries exactly the
// probability the emitters lost: p_total(0) = 1 and a lone emitter loses
// -(1/2) e^{-t} per unit time before the delay.
inline constexpr double kKappa = 4.0 * std::numbers::pi;

struct SpatialAmplitudes {
  Complex a;  // right-moving
  Complex b;  // left-moving
};

struct RegionProbability {
  double gamma_t = 0.0;
  double p_atoms = 0.0;
  double p_field = 0.0;
  double p_total = 0.0;
  double kappa = kKappa;
};

enum class LossRegime { kPreArrival, kPostArrival };
const char* loss_regime_name(LossRegime r);

struct LossRatePoint {
  double gamma_t = 0.0;
  double gamma_rate = 0.0;
  LossRegime regime = LossRegime::kPreArrival;
};

// Field amplitudes at x/d in [-1/2, 1/2] between the emitters (emitter 1 at
// -1/2), built from retarded series amplitudes. Zero outside the light cones.
SpatialAmplitudes spatial_amplitudes(const SystemParams& p, double x_over_d, double gamma_t);

// Emitter probability from the series plus the field probability between the
// emitters, integrated from the series amplitudes.
RegionProbability region_probability(const SystemParams& p, double gamma_t);

// Variant with the field probability from closed pole double sums. The pole
// expansion rings near the jump of c_1 at t = 0, which costs about 3e-4 in
// p_field until that stretch leaves the region at t = eta.
RegionProbability region_probability(const SystemParams& p, const PoleSet& e1,
                                     const PoleSet& e2, double gamma_t);

// d P / dt. Amplitudes come from the series and their rates from the delay
// equations. The post-arrival branch applies for gamma_t > eta.
LossRatePoint loss_rate(const SystemParams& p, double gamma_t);

// Central difference of loss_rate in delta with phi_2 held fixed.
double loss_rate_gradient(const SystemParams& p, double gamma_t, double d_delta = 1e-4);

// Same derivative from the pole expansion and its analytic delta-derivatives.
// Accurate away from the kinks at multiples of eta.
double loss_rate_gradient_analytic(const SystemParams& p, double gamma_t);

// Time at which the qBIC maps are evaluated, just after the first arrival.
inline double qbic_time(double eta) { return eta + 1e-3; }

}  // namespace wqed

#endif  // WQED_FIELDSPACE_HPP_
