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

#ifndef WQED_MATHKIT_HPP_
#define WQED_MATHKIT_HPP_

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace wqed {

using Complex = std::complex<double>;

// Branch k of the Lambert W function, w * exp(w) = z.
// Throws NumericalError if Halley iteration does not converge.
Complex lambert_w(int k, Complex z);

// Modified Bessel function I_{n+1/2}(z), n >= 0.
Complex bessel_i_half(int n, Complex z);

// A real number stored as sign * exp(log_abs); used where magnitudes leave
// the double range before they are combined.
struct LogReal {
  double sign = 0.0;
  double log_abs = 0.0;
  double value() const;
};

// Normalized Bessel J of half-integer order nu = h - 1/2:
//   L_nu(y) = Gamma(nu + 1) (2/y)^nu J_nu(y),
// so L(0) = 1, L_{-1/2}(y) = cos y and L_{1/2}(y) = sin(y)/y.
// Returns orders h = h_lo, ..., h_lo + count - 1 for real y.
std::vector<LogReal> normalized_bessel_j_half(int h_lo, int count, double y);

struct MullerOptions {
  double tol = 1e-7;
  int max_iter = 10000;
};

// Muller's method from three distinct seeds. Converges when |f(x)| <= tol or
// the step satisfies |dx| <= tol * max(1, |x|).
Complex muller_root(const std::function<Complex(Complex)>& f,
                    const std::array<Complex, 3>& seeds,
                    const MullerOptions& options = {});

// Antiderivatives of tau^{n-1} exp(u tau) for n = 1, 2, 3.
struct ExpMoments {
  Complex g1;
  Complex g2;
  Complex g3;
};

ExpMoments exp_moments(Complex u, double tau);

// Definite integrals from tau0 to tau1 of tau^{n-1} exp(u tau). Switches to a
// Taylor series in u when the closed form would cancel.
ExpMoments exp_moment_diff(Complex u, double tau0, double tau1);

}  // namespace wqed

#endif  // WQED_MATHKIT_HPP_
