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
#include <vector>

#include "wqed/error.hpp"
#include "wqed/qfi.hpp"

namespace wqed {
namespace {

// State at one detuning in the mean-frequency frame: emitter amplitudes at t
// and the right- and left-moving field spectra on the frequency grid.
struct GridState {
  Complex atom[2];
  std::vector<Complex> right;
  std::vector<Complex> left;
};

GridState grid_state(const SystemParams& p, double theta, double t,
                     const std::vector<double>& grid) {
  const Complex i(0.0, 1.0);
  auto [e1, e2] = pole_expansion(p, Exec::kSerial);
  const PoleSet* sets[2] = {&e1, &e2};
  std::vector<Complex> rate[2], res[2], decay[2];
  GridState st;
  for (int m = 0; m < 2; ++m) {
    const double lam = m == 0 ? 0.5 * p.delta : -0.5 * p.delta;
    st.atom[m] = Complex(0.0, 0.0);
    for (const PoleEntry& e : sets[m]->entries) {
      const Complex r = e.pole - i * lam;
      rate[m].push_back(r);
      res[m].push_back(e.residue);
      decay[m].push_back(std::exp(r * t));
      st.atom[m] += e.residue * decay[m].back();
    }
  }
  const long n = static_cast<long>(grid.size());
  st.right.resize(grid.size());
  st.left.resize(grid.size());
  const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    const double w = grid[k];
    const Complex osc = std::exp(i * (w * t));
    Complex amp[2];
    for (int m = 0; m < 2; ++m) {
      Complex sum(0.0, 0.0);
      for (size_t j = 0; j < rate[m].size(); ++j) {
        const Complex z = rate[m][j] + i * w;
        sum += res[m][j] * (decay[m][j] * osc - 1.0) / z;
      }
      amp[m] = sum;
    }
    // Emitters at -eta/2 and +eta/2; theta is the mean-frequency round-trip phase.
    const Complex ph1 = std::exp(i * (0.5 * theta + 0.5 * w * p.eta));
    const Complex ph2 = std::exp(-i * (0.5 * theta + 0.5 * w * p.eta));
    st.right[k] = norm * (ph1 * amp[0] + ph2 * amp[1]);
    st.left[k] = norm * (std::conj(ph1) * amp[0] + std::conj(ph2) * amp[1]);
  }
  return st;
}

// Trapezoid sum over nodes first..last (inclusive) in steps of `stride`.
void field_sums(const GridState& a, const GridState& b, double dw, size_t stride, size_t first,
                size_t last, double& fd, Complex& fc) {
  fd = 0.0;
  fc = Complex(0.0, 0.0);
  for (size_t k = first; k <= last; k += stride) {
    const double wgt = (k == first || k == last) ? 0.5 : 1.0;
    fd += wgt * (std::norm(a.right[k] - b.right[k]) + std::norm(a.left[k] - b.left[k]));
    fc += wgt * (std::conj(a.right[k]) * b.right[k] + std::conj(a.left[k]) * b.left[k]);
  }
  fd *= dw * static_cast<double>(stride);
  fc *= dw * static_cast<double>(stride);
}

// Distance and overlap using every `stride`-th node. The field spectra fall
// off as 1/w, so a window of half-width W misses O(1/W); the full and
// half-width windows are combined to cancel that term.
void accumulate(const GridState& a, const GridState& b, double dw, size_t stride,
                double& dist, Complex& cross) {
  dist = 0.0;
  cross = Complex(0.0, 0.0);
  for (int m = 0; m < 2; ++m) {
    dist += std::norm(a.atom[m] - b.atom[m]);
    cross += std::conj(a.atom[m]) * b.atom[m];
  }
  const size_t n = a.right.size();
  double fd_full = 0.0, fd_half = 0.0;
  Complex fc_full, fc_half;
  field_sums(a, b, dw, stride, 0, n - 1, fd_full, fc_full);
  field_sums(a, b, dw, stride, (n - 1) / 4, n - 1 - (n - 1) / 4, fd_half, fc_half);
  dist += 2.0 * fd_full - fd_half;
  cross += 2.0 * fc_full - fc_half;
}

double fidelity_qfi(double dist, Complex cross, double d_delta) {
  // |<A|B>| from the distance keeps the leading 1 exact.
  const double re = 1.0 - 0.5 * dist;
  const double fid = std::sqrt(re * re + cross.imag() * cross.imag());
  return 8.0 * (1.0 - fid) / (d_delta * d_delta);
}

}  // namespace

FdOracleResult qfi_fd_oracle(const SystemParams& p, double gamma_t, double d_delta,
                             double half_width, int points) {
  p.validate();
  if (p.beta != 1.0) throw ConfigError("qfi_fd_oracle: only beta = 1 is supported");
  if (!(d_delta >= 1e-5 && d_delta <= 1e-3)) {
    throw ConfigError("qfi_fd_oracle: d_delta must lie in [1e-5, 1e-3]");
  }
  if (points < 5 || (points - 1) % 4 != 0 || !(half_width > 0.0)) {
    throw ConfigError("qfi_fd_oracle: points must be 4m + 1 and half_width positive");
  }
  if (!(gamma_t >= 0.0)) throw ConfigError("qfi_fd_oracle: gamma_t must be >= 0");
  FdOracleResult out;
  if (gamma_t == 0.0) return out;

  // Refined grid; the base grid is every other node.
  const size_t fine = 2 * static_cast<size_t>(points - 1) + 1;
  std::vector<double> grid(fine);
  const double dw = 2.0 * half_width / static_cast<double>(fine - 1);
  for (size_t k = 0; k < fine; ++k) grid[k] = -half_width + dw * static_cast<double>(k);

  // Both states share the mean frequency, so the mean round-trip phase is fixed.
  const double theta = p.phase2() + 0.5 * p.delta * p.eta;
  SystemParams lo = p;
  SystemParams hi = p;
  lo.delta = p.delta - 0.5 * d_delta;
  hi.delta = p.delta + 0.5 * d_delta;
  lo.phi2 = theta - 0.5 * lo.delta * p.eta;
  hi.phi2 = theta - 0.5 * hi.delta * p.eta;
  const GridState a = grid_state(lo, theta, gamma_t, grid);
  const GridState b = grid_state(hi, theta, gamma_t, grid);

  double dist = 0.0;
  Complex cross;
  accumulate(a, b, dw, 2, dist, cross);
  out.h = fidelity_qfi(dist, cross, d_delta);
  accumulate(a, b, dw, 1, dist, cross);
  out.h_refined = fidelity_qfi(dist, cross, d_delta);
  const double scale = std::max(std::abs(out.h_refined), 1e-300);
  out.resolved = std::abs(out.h - out.h_refined) <= 1e-2 * scale;
  return out;
}

}  // namespace wqed
