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

#ifndef WQED_QFI_HPP_
#define WQED_QFI_HPP_

#include <vector>

#include "wqed/dynamics.hpp"
#include "wqed/parallel.hpp"

namespace wqed {

// How the emitter phases move when delta changes. The pole equations depend
// on delta both directly and through phi_1, phi_2.
struct PhaseRates {
  double d_phi1 = 0.0;
  double d_phi2 = 0.0;

  // Phases frozen; the delta = 0 shift derivative has a closed form.
  static PhaseRates fixed_phase() { return {0.0, 0.0}; }
  // phi_2 held fixed, phi_1 = phi_2 + delta * eta (matches SystemParams).
  static PhaseRates fixed_emitter2(double eta) { return {eta, 0.0}; }
  // Mean frequency held fixed while the emitters split symmetrically.
  static PhaseRates mean_frequency(double eta) { return {0.5 * eta, -0.5 * eta}; }
};

struct DerivativeEntry {
  Complex d_pole;    // total derivative of the pole in delta
  Complex script_r;  // total derivative of the residue in delta
};

struct DerivativeSet {
  int emitter = 1;
  PhaseRates rates;
  std::vector<DerivativeEntry> entries;  // aligned with PoleSet::entries
};

struct QfiPoint {
  double eta = 0.0;
  double delta = 0.0;
  double gamma_t = 0.0;
  double h = 0.0;
};

// Implicit-function derivative of each pole. Throws NumericalError naming the
// branch when the slope vanishes.
DerivativeSet pole_delta_derivatives(const SystemParams& p, const PoleSet& poles,
                                     const PhaseRates& rates);

// Quotient-rule derivative of each residue; needs d_pole already filled.
void residue_delta_derivatives(const SystemParams& p, const PoleSet& poles,
                               DerivativeSet& dpoles);

// d c_m / d delta at time t, from the pole expansion and its derivatives.
Complex amplitude_delta_derivative(const PoleSet& poles, const DerivativeSet& dpoles,
                                   double t);

// Poles, residues and mean-frequency derivatives for one (eta, delta) point,
// reusable across evaluation times.
class QfiModel {
 public:
  explicit QfiModel(const SystemParams& p, Exec exec = Exec::kParallel);

  const SystemParams& params() const { return params_; }
  const PoleSet& poles(int emitter) const { return emitter == 1 ? poles1_ : poles2_; }
  const DerivativeSet& derivatives(int emitter) const {
    return emitter == 1 ? d1_ : d2_;
  }

  // <Psi|Psi>, <Psi|dPsi> and <dPsi|dPsi> at time t.
  struct Overlaps {
    Complex norm;
    Complex psi_dpsi;
    Complex dpsi_dpsi;
  };
  Overlaps overlaps(double gamma_t, Exec exec = Exec::kParallel) const;

  QfiPoint qfi(double gamma_t, Exec exec = Exec::kParallel) const;

 private:
  SystemParams params_;
  PoleSet poles1_;
  PoleSet poles2_;
  DerivativeSet d1_;
  DerivativeSet d2_;
};

Complex overlap_psi_dpsi(const QfiModel& model, double gamma_t, Exec exec = Exec::kParallel);
double overlap_dpsi_dpsi(const QfiModel& model, double gamma_t, Exec exec = Exec::kParallel);

// h = 4 [Re <dPsi|dPsi> + <Psi|dPsi>^2]. Requires beta = 1 (ConfigError otherwise).
QfiPoint qfi(const SystemParams& p, double gamma_t, Exec exec = Exec::kParallel);

struct FdOracleResult {
  double h = 0.0;          // estimate on the base grid
  double h_refined = 0.0;  // estimate on the grid with twice the density
  bool resolved = true;    // false when the two disagree by more than 1e-2
};

// Fidelity estimate 8 (1 - |<Psi(delta - d/2)|Psi(delta + d/2)>|) / d^2 with the
// field overlap integrated on a frequency grid of half-width `half_width`
// (trapezoid rule, `points` = 4m + 1 nodes, extrapolated in the window width).
// Independent of the overlap kernels.
FdOracleResult qfi_fd_oracle(const SystemParams& p, double gamma_t, double d_delta,
                             double half_width = 10.0, int points = 20001);

// QFI for a single emitter on its own waveguide: 4 [1 - (e^-t + 2t) e^-t].
double baseline_qfi(double gamma_t);

// Same quantity with the overlap integrals over the emitted wavepacket done by
// adaptive quadrature.
double baseline_qfi_quadrature(double gamma_t);

}  // namespace wqed

#endif  // WQED_QFI_HPP_
