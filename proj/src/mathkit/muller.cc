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
#include <sstream>

#include "wqed/error.hpp"
#include "wqed/mathkit.hpp"

namespace wqed {
namespace {

struct Outcome {
  bool converged = false;
  bool degenerate = false;
  Complex x;
};

Outcome iterate(const std::function<Complex(Complex)>& f, Complex x0,
                Complex x1, Complex x2, const MullerOptions& opt) {
  Complex f0 = f(x0), f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (std::abs(f2) <= opt.tol) return {true, false, x2};
    const Complex h1 = x1 - x0;
    const Complex h2 = x2 - x1;
    if (h1 == 0.0 || h2 == 0.0 || h1 + h2 == 0.0) return {false, true, x2};
    const Complex d1 = (f1 - f0) / h1;
    const Complex d2 = (f2 - f1) / h2;
    const Complex a = (d2 - d1) / (h2 + h1);
    const Complex b = a * h2 + d2;
    const Complex disc = std::sqrt(b * b - 4.0 * a * f2);
    const Complex den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
    if (den == 0.0) return {false, true, x2};
    const Complex dx = -2.0 * f2 / den;
    const Complex x3 = x2 + dx;
    x0 = x1;
    x1 = x2;
    x2 = x3;
    f0 = f1;
    f1 = f2;
    f2 = f(x3);
    if (!std::isfinite(x3.real()) || !std::isfinite(x3.imag())) break;
    if (std::abs(dx) <= opt.tol * std::max(1.0, std::abs(x3))) {
      return {true, false, x3};
    }
  }
  return {false, false, x2};
}

}  // namespace

Complex muller_root(const std::function<Complex(Complex)>& f,
                    const std::array<Complex, 3>& seeds,
                    const MullerOptions& options) {
  if (!(options.tol > 0.0)) throw NumericalError("muller_root: tol must be > 0");
  Outcome out = iterate(f, seeds[0], seeds[1], seeds[2], options);
  if (out.degenerate) {
    // One fixed perturbation keeps the retry deterministic.
    const Complex x2 = out.x + 1e-8 * std::max(1.0, std::abs(out.x));
    out = iterate(f, seeds[0], seeds[1], x2, options);
  }
  if (!out.converged) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "muller_root: no convergence from seeds (" << seeds[0].real() << ","
        << seeds[0].imag() << ") after " << options.max_iter << " iterations";
    throw NumericalError(msg.str());
  }
  return out.x;
}

}  // namespace wqed
