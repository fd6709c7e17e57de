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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wqed/error.hpp"
#include "wqed/spectrum.hpp"

namespace wqed {

const char* regime_name(Regime r) {
  return r == Regime::kLargeDetuning ? "large-detuning" : "small-detuning";
}

ResponseValue response(const SystemParams& p, double omega_bar) {
  const Complex i(0.0, 1.0);
  const double eta = p.eta;
  const double delta = p.delta;
  const double phi2 = p.phase2();
  const Complex base = -i * omega_bar + 0.5;
  // Round-trip factor with the propagation phases of both emitters.
  const Complex loop =
      std::exp(i * (2.0 * eta * omega_bar + eta * delta + 2.0 * phi2)) * (p.beta * p.beta);
  ResponseValue r;
  r.omega_bar = omega_bar;
  r.d_denom = base * base + 0.25 * delta * delta - 0.25 * loop;
  if (std::abs(r.d_denom) < 1e-14) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "response: pole on the real frequency axis at omega_bar=" << omega_bar << " for "
        << p.describe();
    throw NumericalError(msg.str());
  }
  r.f1 = (-i * (omega_bar + 0.5 * delta) + 0.5) / r.d_denom;
  r.f2 = -p.beta * std::exp(i * (eta * omega_bar + 0.5 * eta * delta + phi2)) /
         (2.0 * r.d_denom);
  return r;
}

namespace {

double spectral_density(const SystemParams& p, double omega_bar) {
  const ResponseValue r = response(p, omega_bar);
  const double phase = omega_bar * p.eta + 0.5 * p.eta * p.delta + p.phase2();
  const double cross = std::cos(phase) * std::real(std::conj(r.f1) * r.f2);
  // Sum of squared moduli; clamp rounding below zero.
  return std::max(0.0, (std::norm(r.f1) + std::norm(r.f2) + 2.0 * cross) / std::numbers::pi);
}

}  // namespace

double spectrum_point(const SystemParams& p, double omega_bar) {
  try {
    return spectral_density(p, omega_bar);
  } catch (const NumericalError&) {
    // The bound-state pole cancels in G; take the two-sided limit.
    const double h = 1e-6 * std::max(1.0, std::abs(omega_bar));
    return 0.5 * (spectral_density(p, omega_bar - h) + spectral_density(p, omega_bar + h));
  }
}

SpectrumGrid spectrum_g(const SystemParams& p, const std::vector<double>& grid, Exec exec) {
  for (size_t j = 1; j < grid.size(); ++j) {
    if (!(grid[j] > grid[j - 1])) throw ConfigError("spectrum_g: grid must be strictly ascending");
  }
  SpectrumGrid out;
  out.omega_bar = grid;
  out.g.assign(grid.size(), 0.0);
  const long n = static_cast<long>(grid.size());
  bool failed = false;
  std::string what;
#pragma omp parallel for schedule(static) if (exec == Exec::kParallel) num_threads(workers())
  for (long j = 0; j < n; ++j) {
    try {
      out.g[j] = spectrum_point(p, grid[j]);
    } catch (const NumericalError& e) {
#pragma omp critical
      {
        if (!failed) what = e.what();
        failed = true;
      }
    }
  }
  if (failed) throw NumericalError(what);
  return out;
}

std::vector<double> default_spectrum_grid(const SystemParams& p) {
  const double half = 3.0 + 0.5 * std::abs(p.delta);
  const int count = 4001;
  std::vector<double> g(count);
  for (int j = 0; j < count; ++j) g[j] = -half + 2.0 * half * j / (count - 1);
  return g;
}

std::vector<PeakPrediction> peak_predictions(const SystemParams& p, int n_lo, int n_hi) {
  if (p.eta < 1.0) throw ConfigError("peak_predictions: eta must be >= 1");
  if (n_hi < n_lo) throw ConfigError("peak_predictions: empty branch range");
  const Complex i(0.0, 1.0);
  // Conjugate phase keeps the branch labelling of the zero-phase case.
  const Complex z = 0.5 * p.eta * std::exp(0.5 * p.eta) * std::exp(-i * p.phase2());
  std::vector<PeakPrediction> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    PeakPrediction pk;
    pk.n = n;
    pk.omega_plus = -0.5 * p.delta + lambert_w(n, z).imag() / p.eta;
    pk.omega_minus = -0.5 * p.delta + lambert_w(n, -z).imag() / p.eta;
    out.push_back(pk);
  }
  return out;
}

std::vector<Alignment> resonance_alignment(double delta, int n_lo, int n_hi) {
  if (delta == 0.0 || !std::isfinite(delta)) {
    throw ConfigError("resonance_alignment: delta must be nonzero");
  }
  if (n_hi < n_lo || n_lo < 0) throw ConfigError("resonance_alignment: need 0 <= n_lo <= n_hi");
  const double pi = std::numbers::pi;
  const double d = std::abs(delta);
  std::vector<Alignment> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    out.push_back({n, (n + 0.5) * pi / d, Regime::kLargeDetuning});
    if (n > 0) out.push_back({n, n * pi / d, Regime::kSmallDetuning});
  }
  return out;
}

}  // namespace wqed
