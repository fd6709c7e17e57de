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

#include "wqed/mathkit.hpp"

namespace wqed {
namespace {

// Below this |u| (or |u| * tau) the closed forms lose digits to cancellation.
constexpr double kSmallU = 1e-6;
constexpr double kSmallPhase = 0.5;

ExpMoments taylor_diff(Complex u, double t0, double t1) {
  // int tau^{n-1} e^{u tau} = sum_k u^k/k! (t1^{n+k} - t0^{n+k}) / (n+k)
  ExpMoments out{};
  Complex* slot[3] = {&out.g1, &out.g2, &out.g3};
  for (int n = 1; n <= 3; ++n) {
    Complex coef(1.0, 0.0);
    double p1 = std::pow(t1, n);
    double p0 = std::pow(t0, n);
    Complex sum(0.0, 0.0);
    for (int k = 0; k < 80; ++k) {
      const Complex term = coef * (p1 - p0) / static_cast<double>(n + k);
      sum += term;
      if (k > 2 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
      coef *= u / static_cast<double>(k + 1);
      p1 *= t1;
      p0 *= t0;
    }
    *slot[n - 1] = sum;
  }
  return out;
}

}  // namespace

ExpMoments exp_moments(Complex u, double tau) {
  const Complex e = std::exp(u * tau);
  const Complex ut = u * tau;
  return {e / u, e * (ut - 1.0) / (u * u), e * (ut * ut - 2.0 * ut + 2.0) / (u * u * u)};
}

ExpMoments exp_moment_diff(Complex u, double tau0, double tau1) {
  const double span = std::max(std::abs(tau0), std::abs(tau1));
  const double au = std::abs(u);
  if (au < kSmallU || au * span < kSmallPhase) return taylor_diff(u, tau0, tau1);
  const ExpMoments a = exp_moments(u, tau1);
  const ExpMoments b = exp_moments(u, tau0);
  return {a.g1 - b.g1, a.g2 - b.g2, a.g3 - b.g3};
}

}  // namespace wqed
