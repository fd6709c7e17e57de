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
#include <numbers>
#include <sstream>

#include "wqed/dynamics.hpp"
#include "wqed/error.hpp"

namespace wqed {

double SystemParams::phase2() const {
  constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;
  constexpr long double kGrid = 68719476736.0L;  // 2^36
  const long double r = std::remainder(static_cast<long double>(phi2), kTwoPi);
  return static_cast<double>(std::nearbyint(r * kGrid) / kGrid);
}

double SystemParams::phase1() const { return phase2() + delta * eta; }

double SystemParams::omega0() const {
  if (omega0_tilde) return *omega0_tilde;
  return phase2() / eta + 0.5 * delta;
}

void SystemParams::validate() const {
  auto bad = [this](const std::string& field, const std::string& why) {
    throw ConfigError("invalid " + field + " (" + why + ") at " + describe());
  };
  if (!std::isfinite(eta) || !(eta > 0.0)) bad("eta", "must be > 0");
  if (!std::isfinite(delta)) bad("delta", "must be finite");
  if (!std::isfinite(phi2)) bad("phi2", "must be finite");
  if (!(beta > 0.0) || !(beta <= 1.0)) bad("beta", "must lie in (0, 1]");
  if (j_cut < 1) bad("j_cut", "must be >= 1");
  const double norm = std::norm(c1_0) + std::norm(c2_0);
  if (std::abs(norm - 1.0) > 1e-9) bad("initial amplitudes", "must be normalized");
}

std::string SystemParams::describe() const {
  std::ostringstream s;
  s.precision(10);
  s << "(eta=" << eta << ", delta=" << delta << ", beta=" << beta << ")";
  return s.str();
}

const char* method_name(Method m) {
  switch (m) {
    case Method::kSeries:
      return "series";
    case Method::kPoles:
      return "poles";
    case Method::kOde:
      return "ode";
  }
  return "unknown";
}

std::pair<Complex, Complex> amplitude_rates(const SystemParams& p, double t,
                                            Complex c1, Complex c2,
                                            Complex c1_retarded,
                                            Complex c2_retarded) {
  const Complex i(0.0, 1.0);
  const Complex d1 =
      -0.5 * (c1 + p.beta * c2_retarded * std::exp(i * (p.phase2() + p.delta * t)));
  const Complex d2 =
      -0.5 * (c2 + p.beta * c1_retarded * std::exp(i * (p.phase1() - p.delta * t)));
  return {d1, d2};
}

}  // namespace wqed
