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
#include <sstream>

#include "wqed/dynamics.hpp"
#include "wqed/error.hpp"

namespace wqed {
namespace {

constexpr double kResidualTol = 1e-7;
constexpr double kDuplicateTol = 1e-9;
constexpr double kRightHalfSlack = 1e-9;

// Orientation of the detuning term: emitter 1 sees -i delta, emitter 2 +i delta.
double detuning_sign(int emitter) { return emitter == 1 ? -1.0 : 1.0; }

double emitter_phase(const SystemParams& p, int emitter) {
  return emitter == 1 ? p.phase1() : p.phase2();
}

// Feedback term beta^2/4 exp(2 i phi_m - 2 eta s).
Complex feedback(const SystemParams& p, int emitter, Complex s) {
  const Complex i(0.0, 1.0);
  return 0.25 * p.beta * p.beta * std::exp(2.0 * i * emitter_phase(p, emitter) - 2.0 * p.eta * s);
}

std::string branch_label(int sigma, int k) {
  std::ostringstream s;
  s << "(" << (sigma > 0 ? '+' : '-') << "," << k << ")";
  return s.str();
}

// Follows one root of (s+1/2)(s + i sg lam delta + 1/2) - E(s) from lam = 0,
// where it equals the Lambert-W seed, to lam = 1 by predictor-corrector steps.
Complex continue_root(const SystemParams& p, int emitter, Complex seed,
                      int sigma, int k) {
  const Complex i(0.0, 1.0);
  const double sg = detuning_sign(emitter);
  const Complex e0 = 0.25 * p.beta * p.beta * std::exp(2.0 * i * emitter_phase(p, emitter));
  const double two_eta = 2.0 * p.eta;
  auto f = [&](Complex s, double lam) {
    return (s + 0.5) * (s + i * sg * lam * p.delta + 0.5) - e0 * std::exp(-two_eta * s);
  };
  auto fs = [&](Complex s, double lam) {
    return 2.0 * s + 1.0 + i * sg * lam * p.delta + two_eta * e0 * std::exp(-two_eta * s);
  };
  auto fl = [&](Complex s) { return i * sg * p.delta * (s + 0.5); };

  double lam = 0.0;
  double h = 0.25;
  Complex s = seed;
  int guard = 0;
  while (lam < 1.0) {
    if (++guard > 100000) break;
    h = std::min(h, 1.0 - lam);
    const Complex step = -fl(s) / fs(s, lam) * h;
    const Complex pred = s + step;
    Complex x = pred;
    bool ok = false;
    for (int it = 0; it < 6; ++it) {
      const Complex dx = f(x, lam + h) / fs(x, lam + h);
      x -= dx;
      if (std::abs(dx) <= 1e-13 * std::max(1.0, std::abs(x))) {
        ok = true;
        break;
      }
    }
    if (ok && std::abs(x - pred) <= 0.1 * std::abs(step) + 1e-12 * std::max(1.0, std::abs(x))) {
      s = x;
      lam += h;
      h *= 1.5;
    } else {
      h *= 0.5;
      if (h < 1e-9) break;
    }
  }
  if (lam < 1.0) {
    throw NumericalError("find_poles: shift continuation stalled on branch " +
                         branch_label(sigma, k) + " at " + p.describe());
  }
  return s;
}

}  // namespace

Complex characteristic(const SystemParams& p, int emitter, Complex s) {
  const Complex i(0.0, 1.0);
  return (s + 0.5) * (s + i * detuning_sign(emitter) * p.delta + 0.5) - feedback(p, emitter, s);
}

Complex characteristic_slope(const SystemParams& p, int emitter, Complex s) {
  const Complex i(0.0, 1.0);
  return 2.0 * s + 1.0 + i * detuning_sign(emitter) * p.delta +
         2.0 * p.eta * feedback(p, emitter, s);
}

PoleSet find_poles(const SystemParams& p, int emitter, Exec exec) {
  p.validate();
  if (emitter != 1 && emitter != 2) throw ConfigError("emitter must be 1 or 2");
  const Complex i(0.0, 1.0);
  const int per_sign = 2 * p.j_cut + 1;
  PoleSet out;
  out.emitter = emitter;
  out.entries.resize(static_cast<size_t>(2 * per_sign));
  const Complex base = 0.5 * p.eta * p.beta * std::exp(i * emitter_phase(p, emitter) + 0.5 * p.eta);

  auto solve = [&](int idx) {
    const int sigma = idx < per_sign ? 1 : -1;
    const int k = (idx % per_sign) - p.j_cut;
    PoleEntry e;
    e.sigma = sigma;
    e.k = k;
    e.seed = lambert_w(k, static_cast<double>(sigma) * base) / p.eta - 0.5;
    if (p.delta == 0.0) {
      e.pole = e.seed;
    } else {
      Complex s = continue_root(p, emitter, e.seed, sigma, k);
      for (int it = 0; it < 2; ++it) s -= characteristic(p, emitter, s) / characteristic_slope(p, emitter, s);
      e.pole = s;
    }
    e.shift = e.pole - e.seed;
    out.entries[static_cast<size_t>(idx)] = e;
  };

  const int n = static_cast<int>(out.entries.size());
  if (exec == Exec::kParallel) {
    std::string first_error;
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < n; ++idx) {
      try {
        solve(idx);
      } catch (const std::exception& ex) {
#pragma omp critical(wqed_find_poles)
        if (first_error.empty()) first_error = ex.what();
      }
    }
    if (!first_error.empty()) throw NumericalError(first_error);
  } else {
    for (int idx = 0; idx < n; ++idx) solve(idx);
  }

  for (const PoleEntry& e : out.entries) {
    // Scale by the quadratic part so large branches are judged relatively.
    const double scale = 1.0 + std::norm(e.pole + 0.5);
    const double res = std::abs(characteristic(p, emitter, e.pole)) / scale;
    if (!(res <= kResidualTol)) {
      throw NumericalError("find_poles: relative residual " + std::to_string(res) + " on branch " +
                           branch_label(e.sigma, e.k) + " at " + p.describe());
    }
    if (e.pole.real() > kRightHalfSlack) {
      throw NumericalError("find_poles: right-half-plane pole on branch " +
                           branch_label(e.sigma, e.k) + " at " + p.describe());
    }
  }

  // Duplicate scan on poles sorted by real part.
  std::vector<int> order(out.entries.size());
  for (size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return out.entries[a].pole.real() < out.entries[b].pole.real();
  });
  for (size_t a = 0; a < order.size(); ++a) {
    const PoleEntry& ea = out.entries[order[a]];
    for (size_t b = a + 1; b < order.size(); ++b) {
      const PoleEntry& eb = out.entries[order[b]];
      if (eb.pole.real() - ea.pole.real() > kDuplicateTol) break;
      if (std::abs(eb.pole - ea.pole) <= kDuplicateTol) {
        throw NumericalError("find_poles: branches " + branch_label(ea.sigma, ea.k) + " and " +
                             branch_label(eb.sigma, eb.k) + " converged to the same pole at " +
                             p.describe());
      }
    }
  }
  return out;
}

void compute_residues(const SystemParams& p, PoleSet& poles) {
  const Complex i(0.0, 1.0);
  const int m = poles.emitter;
  const Complex own = m == 1 ? p.c1_0 : p.c2_0;
  const Complex other = m == 1 ? p.c2_0 : p.c1_0;
  const double sg = detuning_sign(m);
  const double phase = emitter_phase(p, m);
  for (PoleEntry& e : poles.entries) {
    const Complex s = e.pole;
    const Complex num = own * (s + i * sg * p.delta + 0.5) -
                        other * 0.5 * p.beta * std::exp(i * phase - p.eta * s);
    const Complex den = characteristic_slope(p, m, s);
    if (std::abs(den) <= 1e-12) {
      throw NumericalError("compute_residues: degenerate pole on branch " +
                           branch_label(e.sigma, e.k) + " at " + p.describe());
    }
    e.residue = num / den;
  }
}

std::pair<PoleSet, PoleSet> pole_expansion(const SystemParams& p, Exec exec) {
  PoleSet a = find_poles(p, 1, exec);
  PoleSet b = find_poles(p, 2, exec);
  compute_residues(p, a);
  compute_residues(p, b);
  return {std::move(a), std::move(b)};
}

Complex pole_sum(const PoleSet& poles, double t) {
  Complex sum(0.0, 0.0);
  for (const PoleEntry& e : poles.entries) sum += e.residue * std::exp(e.pole * t);
  return sum;
}

}  // namespace wqed
