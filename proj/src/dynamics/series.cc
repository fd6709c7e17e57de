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

#include "wqed/dynamics.hpp"

namespace wqed {
namespace {

// sign/log pair arithmetic for terms whose factors overflow separately.
LogReal log_add(LogReal a, LogReal b) {
  if (a.sign == 0.0) return b;
  if (b.sign == 0.0) return a;
  const double top = std::max(a.log_abs, b.log_abs);
  const double v = a.sign * std::exp(a.log_abs - top) + b.sign * std::exp(b.log_abs - top);
  if (v == 0.0) return {0.0, -INFINITY};
  return {v < 0.0 ? -1.0 : 1.0, top + std::log(std::abs(v))};
}

double scaled(LogReal a, double log_factor) {
  if (a.sign == 0.0) return 0.0;
  return a.sign * std::exp(a.log_abs + log_factor);
}

// Response of the directly excited emitter ("own") and its partner ("other")
// for unit initial amplitude. `sd` is the detuning as seen by the own emitter
// and `theta` is the mean propagation phase (phi1 + phi2) / 2.
std::pair<Complex, Complex> unit_response(double eta, double sd, double beta,
                                          double theta, double t) {
  const Complex i(0.0, 1.0);
  Complex own = std::exp(-0.5 * t);
  Complex other(0.0, 0.0);
  const double log_beta = std::log(beta);

  // Partner amplitude: one more transit than round trips.
  for (int n = 0; (2 * n + 1) * eta <= t; ++n) {
    const double x = t - (2 * n + 1) * eta;
    const double y = 0.5 * sd * x;
    const LogReal lam = normalized_bessel_j_half(n + 1, 1, y)[0];
    const double log_pref = (2 * n + 1) * std::log(0.5 * x) - std::lgamma(2.0 * n + 2.0) +
                            (2 * n + 1) * log_beta - 0.5 * x;
    const double mag = -scaled(lam, log_pref);
    other += mag * std::exp(i * ((2 * n + 1) * theta - 0.5 * sd * t));
  }

  // Own amplitude: revivals after each round trip.
  for (int n = 1; 2 * n * eta <= t; ++n) {
    const double x = t - 2 * n * eta;
    const double y = 0.5 * sd * x;
    const std::vector<LogReal> lam = normalized_bessel_j_half(n, 3, y);
    const double lx = std::log(0.5 * x);
    const double common = 2 * n * log_beta - 0.5 * x;
    // Even part: (x/2)^{2n}/(2n)! (L_{n+1/2} + L_{n-1/2}) / 2
    const double log_a = 2 * n * lx - std::lgamma(2.0 * n + 1.0) + std::log(0.5) + common;
    const double a = scaled(log_add(lam[1], lam[0]), log_a);
    // Odd part: (x/2)^{2n+1}/(2n+1)! L_{n+1/2}
    const double log_b = (2 * n + 1) * lx - std::lgamma(2.0 * n + 2.0) + common;
    const double b = scaled(lam[1], log_b);
    // Second order: (x/2)^{2n+2} L_{n+3/2} / (2 (2n+3) (2n+1)!)
    const double log_c = (2 * n + 2) * lx - std::lgamma(2.0 * n + 2.0) -
                         std::log(2.0 * (2 * n + 3)) + common;
    const double c = scaled(lam[2], log_c);
    const Complex xi = Complex(a - sd * sd * c, -sd * b);
    own += xi * std::exp(i * (2 * n * theta + 0.5 * sd * t));
  }
  return {own, other};
}

}  // namespace

std::pair<Complex, Complex> series_point(const SystemParams& p, double t) {
  const double theta = 0.5 * (p.phase1() + p.phase2());
  Complex c1(0.0, 0.0);
  Complex c2(0.0, 0.0);
  if (p.c1_0 != 0.0) {
    const auto [own, other] = unit_response(p.eta, p.delta, p.beta, theta, t);
    c1 += p.c1_0 * own;
    c2 += p.c1_0 * other;
  }
  if (p.c2_0 != 0.0) {
    // Mirror image: swap the emitters and reverse the detuning.
    const auto [own, other] = unit_response(p.eta, -p.delta, p.beta, theta, t);
    c2 += p.c2_0 * own;
    c1 += p.c2_0 * other;
  }
  return {c1, c2};
}

AmplitudeTrace amplitude_series(const SystemParams& p, const std::vector<double>& times,
                                Exec exec) {
  p.validate();
  AmplitudeTrace tr;
  tr.method = Method::kSeries;
  tr.times = times;
  tr.c1.resize(times.size());
  tr.c2.resize(times.size());
  const int n = static_cast<int>(times.size());
  auto body = [&](int j) {
    const auto [a, b] = series_point(p, times[j]);
    tr.c1[j] = a;
    tr.c2[j] = b;
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int j = 0; j < n; ++j) body(j);
  } else {
    for (int j = 0; j < n; ++j) body(j);
  }
  return tr;
}

AmplitudeTrace amplitude_poles(const PoleSet& e1, const PoleSet& e2,
                               const std::vector<double>& times, Exec exec) {
  AmplitudeTrace tr;
  tr.method = Method::kPoles;
  tr.times = times;
  tr.c1.resize(times.size());
  tr.c2.resize(times.size());
  const int n = static_cast<int>(times.size());
  auto body = [&](int j) {
    tr.c1[j] = pole_sum(e1, times[j]);
    tr.c2[j] = pole_sum(e2, times[j]);
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) body(j);
  } else {
    for (int j = 0; j < n; ++j) body(j);
  }
  return tr;
}

AmplitudeTrace amplitude_poles(const SystemParams& p, const std::vector<double>& times,
                               Exec exec) {
  const auto [e1, e2] = pole_expansion(p, exec);
  return amplitude_poles(e1, e2, times, exec);
}

}  // namespace wqed
