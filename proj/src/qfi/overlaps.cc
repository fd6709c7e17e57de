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
#include <array>
#include <cmath>
#include <numeric>

#include "wqed/error.hpp"
#include "wqed/mathkit.hpp"
#include "wqed/qfi.hpp"

namespace wqed {
namespace {

constexpr double kUnderflow = -700.0;

// Amplitude of one emitter in the mean-frequency frame, written as
// sum_j (c0_j + c1_j u) exp(rate_j u), plus the same expansion shifted by one
// delay so that f(u + eta) is again of this form.
struct Expansion {
  std::vector<Complex> rate;
  std::vector<Complex> amp;        // state
  std::vector<Complex> d0, d1;     // delta-derivative
  std::vector<Complex> amp_s;      // shifted state
  std::vector<Complex> d0_s, d1_s; // shifted derivative
};

Expansion build(const SystemParams& p, const PoleSet& poles, const DerivativeSet& dp) {
  const Complex i(0.0, 1.0);
  const double lam = poles.emitter == 1 ? 0.5 * p.delta : -0.5 * p.delta;
  const double d_lam = poles.emitter == 1 ? 0.5 : -0.5;
  const size_t n = poles.entries.size();
  // Largest decay first keeps the partial sums ordered by magnitude.
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return poles.entries[a].pole.real() < poles.entries[b].pole.real();
  });
  Expansion e;
  e.rate.resize(n);
  e.amp.resize(n);
  e.d0.resize(n);
  e.d1.resize(n);
  e.amp_s.resize(n);
  e.d0_s.resize(n);
  e.d1_s.resize(n);
  for (size_t j = 0; j < n; ++j) {
    const PoleEntry& pe = poles.entries[order[j]];
    const DerivativeEntry& de = dp.entries[order[j]];
    const Complex rate = pe.pole - i * lam;
    const Complex d_rate = de.d_pole - i * d_lam;
    e.rate[j] = rate;
    e.amp[j] = pe.residue;
    e.d0[j] = de.script_r;
    e.d1[j] = pe.residue * d_rate;
    const Complex shift = std::exp(rate * p.eta);
    e.amp_s[j] = pe.residue * shift;
    e.d0_s[j] = (e.d0[j] + e.d1[j] * p.eta) * shift;
    e.d1_s[j] = e.d1[j] * shift;
  }
  return e;
}

// One bilinear form int_0^tau conj(L(u)) R(u) du with L = l0 + l1 u and
// R = r0 + r1 u on top of the exponentials; null pointers are zero.
struct Form {
  const std::vector<Complex>* l0;
  const std::vector<Complex>* l1;
  const std::vector<Complex>* r0;
  const std::vector<Complex>* r1;
};

constexpr int kMaxForms = 6;

// All forms of one group share the rate matrix conj(a_j) + b_k and tau.
struct Group {
  const std::vector<Complex>* left_rate;
  const std::vector<Complex>* right_rate;
  double tau;
  std::vector<Form> forms;
};

inline ExpMoments moments_from_zero(Complex u, double tau) {
  const double nu = std::norm(u);
  if (nu * tau * tau < 0.25 || nu < 1e-12) return exp_moment_diff(u, 0.0, tau);
  const Complex inv = std::conj(u) / nu;
  const Complex inv2 = inv * inv;
  const Complex inv3 = inv2 * inv;
  const Complex ut = u * tau;
  if (ut.real() < kUnderflow) return {-inv, inv2, -2.0 * inv3};
  const Complex e = std::exp(ut);
  return {(e - 1.0) * inv, (e * (ut - 1.0) + 1.0) * inv2,
          (e * (ut * ut - 2.0 * ut + 2.0) - 2.0) * inv3};
}

void row_sum(const Group& g, size_t j, std::array<Complex, kMaxForms>& acc) {
  acc.fill(Complex(0.0, 0.0));
  const Complex a = std::conj((*g.left_rate)[j]);
  const size_t ns = g.forms.size();
  std::array<Complex, kMaxForms> l0{}, l1{};
  for (size_t s = 0; s < ns; ++s) {
    l0[s] = g.forms[s].l0 ? std::conj((*g.forms[s].l0)[j]) : Complex(0.0, 0.0);
    l1[s] = g.forms[s].l1 ? std::conj((*g.forms[s].l1)[j]) : Complex(0.0, 0.0);
  }
  const std::vector<Complex>& rr = *g.right_rate;
  for (size_t k = 0; k < rr.size(); ++k) {
    const ExpMoments m = moments_from_zero(a + rr[k], g.tau);
    for (size_t s = 0; s < ns; ++s) {
      const Form& sp = g.forms[s];
      const Complex r0 = sp.r0 ? (*sp.r0)[k] : Complex(0.0, 0.0);
      const Complex r1 = sp.r1 ? (*sp.r1)[k] : Complex(0.0, 0.0);
      acc[s] += l0[s] * (r0 * m.g1 + r1 * m.g2) + l1[s] * (r0 * m.g2 + r1 * m.g3);
    }
  }
}

// Rows are summed independently and reduced in row order, so the serial and
// OpenMP paths produce identical bits.
std::vector<Complex> pair_sums(const Group& g, Exec exec) {
  const long rows = static_cast<long>(g.left_rate->size());
  std::vector<std::array<Complex, kMaxForms>> partial(static_cast<size_t>(rows));
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long j = 0; j < rows; ++j) row_sum(g, static_cast<size_t>(j), partial[j]);
  } else {
    for (long j = 0; j < rows; ++j) row_sum(g, static_cast<size_t>(j), partial[j]);
  }
  std::vector<Complex> out(g.forms.size(), Complex(0.0, 0.0));
  for (long j = 0; j < rows; ++j) {
    for (size_t s = 0; s < g.forms.size(); ++s) out[s] += partial[j][s];
  }
  return out;
}

Complex evaluate(const std::vector<Complex>& rate, const std::vector<Complex>& c0,
                 const std::vector<Complex>* c1, double t) {
  Complex sum(0.0, 0.0);
  for (size_t j = 0; j < rate.size(); ++j) {
    const Complex z = rate[j] * t;
    if (z.real() < kUnderflow) continue;
    sum += (c0[j] + (c1 ? (*c1)[j] * t : Complex(0.0, 0.0))) * std::exp(z);
  }
  return sum;
}

}  // namespace

QfiModel::QfiModel(const SystemParams& p, Exec exec) : params_(p) {
  p.validate();
  if (p.beta != 1.0) {
    throw ConfigError("qfi: only beta = 1 (pure global state) is supported, got " + p.describe());
  }
  auto [a, b] = pole_expansion(p, exec);
  poles1_ = std::move(a);
  poles2_ = std::move(b);
  const PhaseRates rates = PhaseRates::mean_frequency(p.eta);
  d1_ = pole_delta_derivatives(p, poles1_, rates);
  d2_ = pole_delta_derivatives(p, poles2_, rates);
  residue_delta_derivatives(p, poles1_, d1_);
  residue_delta_derivatives(p, poles2_, d2_);
}

QfiModel::Overlaps QfiModel::overlaps(double gamma_t, Exec exec) const {
  if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t)) {
    throw ConfigError("qfi: gamma_t must be finite and >= 0");
  }
  // The initial state does not depend on delta.
  if (gamma_t == 0.0) return {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)};

  const Expansion e1 = build(params_, poles1_, d1_);
  const Expansion e2 = build(params_, poles2_, d2_);
  const double t = gamma_t;
  Overlaps o{};

  for (const Expansion* e : {&e1, &e2}) {
    const Complex a = evaluate(e->rate, e->amp, nullptr, t);
    const Complex da = evaluate(e->rate, e->d0, &e->d1, t);
    o.norm += std::conj(a) * a;
    o.psi_dpsi += std::conj(a) * da;
    o.dpsi_dpsi += std::conj(da) * da;
  }

  std::vector<Group> groups;
  for (const Expansion* e : {&e1, &e2}) {
    groups.push_back({&e->rate, &e->rate, t,
                      {{&e->amp, nullptr, &e->amp, nullptr},
                       {&e->amp, nullptr, &e->d0, &e->d1},
                       {&e->d0, &e->d1, &e->d0, &e->d1}}});
  }
  const double eta = params_.eta;
  const bool crossed = t > eta;
  if (crossed) {
    // Field of emitter p at u overlapping the field of emitter q one delay later.
    for (auto [lp, rq] : {std::pair{&e1, &e2}, std::pair{&e2, &e1}}) {
      groups.push_back({&lp->rate, &rq->rate, t - eta,
                        {{&lp->amp, nullptr, &rq->amp_s, nullptr},
                         {&lp->amp, nullptr, &rq->d0_s, &rq->d1_s},
                         {&lp->d0, &lp->d1, &rq->d0_s, &rq->d1_s},
                         {&lp->amp_s, nullptr, &rq->amp, nullptr},
                         {&lp->amp_s, nullptr, &rq->d0, &rq->d1},
                         {&lp->d0_s, &lp->d1_s, &rq->d0, &rq->d1}}});
    }
  }
  std::vector<std::vector<Complex>> sums;
  for (const Group& g : groups) sums.push_back(pair_sums(g, exec));

  for (int m = 0; m < 2; ++m) {
    o.norm += sums[m][0];
    o.psi_dpsi += sums[m][1];
    o.dpsi_dpsi += sums[m][2];
  }
  if (crossed) {
    const Complex i(0.0, 1.0);
    const double theta = params_.phase2() + 0.5 * params_.delta * eta;
    const Complex fwd = 0.5 * std::exp(-i * theta);
    const Complex back = 0.5 * std::exp(i * theta);
    // Group 2 holds (left 1, right 2 shifted) and (left 1 shifted, right 2);
    // group 3 the mirror. Unshifted-left terms pair with the forward phase.
    for (int g = 2; g < 4; ++g) {
      o.norm += fwd * sums[g][0] + back * sums[g][3];
      o.psi_dpsi += fwd * sums[g][1] + back * sums[g][4];
      o.dpsi_dpsi += fwd * sums[g][2] + back * sums[g][5];
    }
  }
  return o;
}

QfiPoint QfiModel::qfi(double gamma_t, Exec exec) const {
  const Overlaps o = overlaps(gamma_t, exec);
  QfiPoint q;
  q.eta = params_.eta;
  q.delta = params_.delta;
  q.gamma_t = gamma_t;
  q.h = 4.0 * (o.dpsi_dpsi.real() + (o.psi_dpsi * o.psi_dpsi).real());
  return q;
}

Complex overlap_psi_dpsi(const QfiModel& model, double gamma_t, Exec exec) {
  return model.overlaps(gamma_t, exec).psi_dpsi;
}

double overlap_dpsi_dpsi(const QfiModel& model, double gamma_t, Exec exec) {
  return model.overlaps(gamma_t, exec).dpsi_dpsi.real();
}

QfiPoint qfi(const SystemParams& p, double gamma_t, Exec exec) {
  return QfiModel(p, exec).qfi(gamma_t, exec);
}

}  // namespace wqed
