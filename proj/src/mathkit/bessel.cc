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

constexpr double kTinyArg = 1e-8;
constexpr double kSeriesRadius = 12.0;

// (z/2)^nu / Gamma(nu + 1) * sum_m (z^2/4)^m / (m! (nu+1)_m)
Complex ascending_series(double nu, Complex z) {
  const Complex q = 0.25 * z * z;
  Complex term(1.0, 0.0);
  Complex sum = term;
  for (int m = 1; m < 300; ++m) {
    term *= q / (static_cast<double>(m) * (m + nu));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return std::pow(0.5 * z, nu) / std::tgamma(nu + 1.0) * sum;
}

// I_{n+1/2}(z) = [e^z P_n(-1/z) - (-1)^n e^{-z} P_n(1/z)] / sqrt(2 pi z),
// P_n(x) = sum_k (n+k)! / (k! (n-k)! 2^k) x^k.
Complex closed_form(int n, Complex z) {
  Complex plus(0.0, 0.0);
  Complex minus(0.0, 0.0);
  double coef = 1.0;
  Complex inv_pow(1.0, 0.0);
  const Complex inv_z = 1.0 / z;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      coef *= static_cast<double>((n + k) * (n - k + 1)) / (2.0 * k);
      inv_pow *= inv_z;
    }
    const Complex t = coef * inv_pow;
    plus += (k % 2 == 0) ? t : -t;
    minus += t;
  }
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;
  return (std::exp(z) * plus - parity * std::exp(-z) * minus) /
         std::sqrt(2.0 * std::numbers::pi * z);
}

}  // namespace

double LogReal::value() const { return sign * std::exp(log_abs); }

Complex bessel_i_half(int n, Complex z) {
  if (n < 0) throw NumericalError("bessel_i_half: order offset must be >= 0");
  const double nu = n + 0.5;
  const double r = std::abs(z);
  if (r < kTinyArg) {
    if (r == 0.0) return {0.0, 0.0};
    return std::pow(0.5 * z, nu) / std::tgamma(nu + 1.0);
  }
  if (std::abs(z.real()) > 700.0) {
    std::ostringstream msg;
    msg << "bessel_i_half: overflow for Re z = " << z.real();
    throw NumericalError(msg.str());
  }
  if (r <= kSeriesRadius) return ascending_series(nu, z);
  return closed_form(n, z);
}

std::vector<LogReal> normalized_bessel_j_half(int h_lo, int count, double y) {
  std::vector<LogReal> out(static_cast<size_t>(count));
  const double ay = std::abs(y);
  const int h_hi = h_lo + count - 1;

  if (ay <= 1.0) {
    // Terms decrease monotonically; plain series is exact to rounding.
    const double q = -0.25 * y * y;
    for (int i = 0; i < count; ++i) {
      const double nu = h_lo + i - 0.5;
      double term = 1.0;
      double sum = 1.0;
      for (int m = 1; m < 60; ++m) {
        term *= q / (m * (m + nu));
        sum += term;
        if (std::abs(term) < 1e-18) break;
      }
      out[i] = {sum < 0.0 ? -1.0 : 1.0, std::log(std::abs(sum))};
    }
    return out;
  }

  if (h_hi + 0.5 <= ay) {
    // All orders below the argument: forward recurrence on J itself is stable,
    // J_{nu+1} = (2 nu / y) J_nu - J_{nu-1}, starting from the closed forms.
    const double amp = std::sqrt(2.0 / (std::numbers::pi * ay));
    double prev = amp * std::cos(ay);  // J_{-1/2}
    double cur = amp * std::sin(ay);   // J_{1/2}
    const double log_two_over_y = std::log(2.0 / ay);
    for (int h = 0; h <= h_hi; ++h) {
      const double nu = h - 0.5;
      const double j = h == 0 ? prev : cur;
      if (h >= h_lo) {
        out[h - h_lo] = j == 0.0 ? LogReal{0.0, -INFINITY}
                                 : LogReal{j < 0.0 ? -1.0 : 1.0,
                                           std::lgamma(nu + 1.0) + nu * log_two_over_y +
                                               std::log(std::abs(j))};
      }
      if (h >= 1) {
        const double next = 2.0 * nu / ay * cur - prev;
        prev = cur;
        cur = next;
      }
    }
    return out;
  }

  // Miller recurrence downward: L_{nu-1} = L_nu - y^2/(4 nu (nu+1)) L_{nu+1}.
  const int top = std::max(h_hi + 2, static_cast<int>(ay)) + 30 +
                  static_cast<int>(8.0 * std::cbrt(ay));
  const double y2 = 0.25 * y * y;
  double upper = 0.0;  // L at order h + 1
  double cur = 1.0;    // L at order h
  double scale = 0.0;  // log of the factor applied so far
  std::vector<double> mant(static_cast<size_t>(count));
  std::vector<double> mscale(static_cast<size_t>(count));
  double at0 = 0.0, at1 = 0.0, scale0 = 0.0, scale1 = 0.0;
  for (int h = top; h >= 0; --h) {
    if (h >= h_lo && h <= h_hi) {
      mant[h - h_lo] = cur;
      mscale[h - h_lo] = scale;
    }
    if (h == 1) {
      at1 = cur;
      scale1 = scale;
    }
    if (h == 0) {
      at0 = cur;
      scale0 = scale;
      break;
    }
    const double nu = h - 0.5;
    const double lower = cur - y2 / (nu * (nu + 1.0)) * upper;
    upper = cur;
    cur = lower;
    const double mag = std::abs(cur);
    if (mag > 1e200 || (mag < 1e-200 && mag > 0.0)) {
      const double f = std::log(mag);
      cur /= mag;
      upper /= mag;
      scale += f;
    }
  }
  // Normalize against whichever closed form is better conditioned.
  const double exact0 = std::cos(y);
  const double exact1 = std::sin(y) / y;
  double log_norm, norm_sign;
  if (std::abs(exact0) >= std::abs(exact1)) {
    log_norm = std::log(std::abs(exact0)) - std::log(std::abs(at0)) - scale0;
    norm_sign = (exact0 < 0) == (at0 < 0) ? 1.0 : -1.0;
  } else {
    log_norm = std::log(std::abs(exact1)) - std::log(std::abs(at1)) - scale1;
    norm_sign = (exact1 < 0) == (at1 < 0) ? 1.0 : -1.0;
  }
  for (int i = 0; i < count; ++i) {
    const double m = mant[i];
    if (m == 0.0) {
      out[i] = {0.0, -INFINITY};
      continue;
    }
    out[i] = {norm_sign * (m < 0 ? -1.0 : 1.0),
              std::log(std::abs(m)) + mscale[i] + log_norm};
  }
  return out;
}

}  // namespace wqed
