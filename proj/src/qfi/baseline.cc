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

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wqed/error.hpp"
#include "wqed/qfi.hpp"

namespace wqed {

double baseline_qfi(double gamma_t) {
  if (!(gamma_t >= 0.0)) throw ConfigError("baseline_qfi: gamma_t must be >= 0");
  const double t = gamma_t;
  return 4.0 * (-std::expm1(-2.0 * t) - 2.0 * t * std::exp(-t));
}

double baseline_qfi_quadrature(double gamma_t) {
  if (!(gamma_t >= 0.0)) throw ConfigError("baseline_qfi_quadrature: gamma_t must be >= 0");
  using boost::math::quadrature::gauss_kronrod;
  const double t = gamma_t;
  if (t == 0.0) return 0.0;
  // Emitted wavepacket intensity |xi|^2 = e^-tau / 2 in each of the two channels.
  auto packet = [](double tau) { return 0.5 * std::exp(-tau); };
  const double m1 = gauss_kronrod<double, 61>::integrate(
      [&](double tau) { return tau * packet(tau); }, 0.0, t, 15, 1e-15);
  const double m2 = gauss_kronrod<double, 61>::integrate(
      [&](double tau) { return tau * tau * packet(tau); }, 0.0, t, 15, 1e-15);
  const double atom = std::exp(-t);
  const double dd = t * t * atom + 2.0 * m2;  // <dPsi|dPsi>
  const double pd = t * atom + 2.0 * m1;      // <Psi|dPsi> = -i pd
  return 4.0 * (dd - pd * pd);
}

}  // namespace wqed
