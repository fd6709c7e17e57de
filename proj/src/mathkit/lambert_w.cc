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

#include "wqed/error.hpp"
#include "wqed/mathkit.hpp"

namespace wqed {
namespace {

constexpr double kInvE = 0.36787944117144233;
constexpr int kMaxHalley = 100;

// Expansion about the branch point z = -1/e; `sign` picks the branch.
Complex branch_point_guess(Complex z, double sign) {
  const Complex p = std::sqrt(2.0 * (std::numbers::e * z + 1.0));
  return -1.0 + sign * p - p * p / 3.0 + sign * 11.0 / 72.0 * p * p * p;
}

Complex asymptotic_guess(int k, Complex z) {
  const Complex l1 =
      std::log(z) + Complex(0.0, 2.0 * std::numbers::pi * static_cast<double>(k));
  const Complex l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

Complex initial_guess(int k, Complex z) {
  const double near_branch = std::abs(z + kInvE);
  if (k == 0) {
    if (near_branch < 1.0) return branch_point_guess(z, 1.0);
    if (std::abs(z) < 0.5) return z * (1.0 - z);
    // Pade-like start that stays on the principal sheet for moderate |z|.
    if (std::abs(z) < 3.0) return std::log(1.0 + z) * 0.7;
    return asymptotic_guess(k, z);
  }
  if (k == -1 && near_branch < 0.3 && z.real() < 0.0 && z.imag() < 1e-3) {
    // Lower side of the cut continues into the k = -1 real branch.
    return branch_point_guess(z, -1.0);
  }
  return asymptotic_guess(k, z);
}

[[noreturn]] void fail(int k, Complex z) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "lambert_w did not converge for k=" << k << ", z=(" << z.real() << ","
      << z.imag() << ")";
  throw NumericalError(msg.str());
}

}  // namespace

Complex lambert_w(int k, Complex z) {
  if (z == Complex(0.0, 0.0)) {
    if (k == 0) return {0.0, 0.0};
    fail(k, z);
  }
  if ((k == 0 || k == -1) && std::abs(z + kInvE) < 1e-300) return {-1.0, 0.0};
  // A signed zero on the cut is read as approaching from above.
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  // Below the cut, reflect onto the upper half plane where the starts are valid.
  if (z.imag() < 0.0) return std::conj(lambert_w(-k, std::conj(z)));

  Complex w = initial_guess(k, z);
  for (int it = 0; it < kMaxHalley; ++it) {
    const Complex ew = std::exp(w);
    const Complex f = w * ew - z;
    const Complex wp1 = w + 1.0;
    const Complex denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const Complex dw = f / denom;
    w -= dw;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) fail(k, z);
    if (std::abs(dw) <= 1e-15 * (1.0 + std::abs(w))) {
      return w;
    }
  }
  // Halley stalls at the last ulp on high branches; accept a tiny residual.
  if (std::abs(w * std::exp(w) - z) <= 1e-12 * std::abs(z)) return w;
  fail(k, z);
}

}  // namespace wqed
