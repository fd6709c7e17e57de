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
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wqed/error.hpp"
#include "wqed/fieldspace.hpp"
#include "wqed/mathkit.hpp"
#include "wqed/qfi.hpp"

namespace wqed {
namespace {

std::pair<Complex, Complex> retarded(const SystemParams& p, double t) {
  if (t < 0.0) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
  return series_point(p, t);
}

// Probability density at the emitter is kappa/(8 pi) |c|^2 per unit time.
constexpr double kFieldWeight = kKappa / (8.0 * std::numbers::pi);

// kFieldWeight * int_{t0}^{t1} |sum_j R_j e^{s_j u}|^2 du as a pole double sum.
double field_integral(const PoleSet& poles, double t0, double t1) {
  if (!(t1 > t0)) return 0.0;
  const auto& en = poles.entries;
  double total = 0.0;
  for (size_t j = 0; j < en.size(); ++j) {
    Complex row(0.0, 0.0);
    for (size_t k = 0; k < en.size(); ++k) {
      const Complex u = en[j].pole + std::conj(en[k].pole);
      row += std::conj(en[k].residue) * exp_moment_diff(u, t0, t1).g1;
    }
    total += std::real(en[j].residue * row);
  }
  return kFieldWeight * total;
}

// Same integral of the series amplitudes by adaptive quadrature, split at the
// feedback kinks so that every piece is smooth.
double field_quadrature(const SystemParams& p, double t0, double t1) {
  if (!(t1 > t0)) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  auto density = [&](double u) {
    const auto [c1, c2] = series_point(p, u);
    return std::norm(c1) + std::norm(c2);
  };
  double total = 0.0;
  double a = t0;
  while (a < t1) {
    const double next_kink = (std::floor(a / p.eta + 1e-12) + 1.0) * p.eta;
    const double b = std::min(t1, next_kink);
    if (b > a) total += gauss_kronrod<double, 31>::integrate(density, a, b, 8, 1e-11);
    a = b;
  }
  return kFieldWeight * total;
}

double loss_rate_value(const SystemParams& p, double t) {
  const auto [c1, c2] = series_point(p, t);
  const bool post = t > p.eta;
  const auto [r1, r2] = retarded(p, t - p.eta);
  const auto [d1, d2] = amplitude_rates(p, t, c1, c2, r1, r2);
  double g = 2.0 * std::real(std::conj(d1) * c1 + std::conj(d2) * c2);
  g += kFieldWeight * (std::norm(c1) + std::norm(c2));
  if (post) g -= kFieldWeight * (std::norm(r1) + std::norm(r2));
  return g;
}

}  // namespace

const char* loss_regime_name(LossRegime r) {
  return r == LossRegime::kPreArrival ? "pre-arrival" : "post-arrival";
}

SpatialAmplitudes spatial_amplitudes(const SystemParams& p, double x_over_d, double gamma_t) {
  if (!(x_over_d >= -0.5 && x_over_d <= 0.5)) {
    throw ConfigError("spatial_amplitudes: x/d must lie in [-1/2, 1/2]");
  }
  const Complex i(0.0, 1.0);
  const double norm = 1.0 / std::sqrt(8.0 * std::numbers::pi);
  const double w1 = p.omega0() + 0.5 * p.delta;
  const double w2 = p.omega0() - 0.5 * p.delta;
  SpatialAmplitudes out{};
  const double tr = gamma_t - p.eta * (x_over_d + 0.5);
  if (tr >= 0.0) out.a = -i * norm * series_point(p, tr).first * std::exp(-i * w1 * tr);
  const double tl = gamma_t - p.eta * (0.5 - x_over_d);
  if (tl >= 0.0) out.b = -i * norm * series_point(p, tl).second * std::exp(-i * w2 * tl);
  return out;
}

RegionProbability region_probability(const SystemParams& p, double gamma_t) {
  if (!(gamma_t >= 0.0)) throw ConfigError("region_probability: gamma_t must be >= 0");
  p.validate();
  RegionProbability r;
  r.gamma_t = gamma_t;
  const auto [c1, c2] = series_point(p, gamma_t);
  r.p_atoms = std::norm(c1) + std::norm(c2);
  r.p_field = field_quadrature(p, std::max(0.0, gamma_t - p.eta), gamma_t);
  r.p_total = r.p_atoms + r.p_field;
  return r;
}

RegionProbability region_probability(const SystemParams& p, const PoleSet& e1,
                                     const PoleSet& e2, double gamma_t) {
  if (!(gamma_t >= 0.0)) throw ConfigError("region_probability: gamma_t must be >= 0");
  RegionProbability r;
  r.gamma_t = gamma_t;
  const auto [c1, c2] = series_point(p, gamma_t);
  r.p_atoms = std::norm(c1) + std::norm(c2);
  const double t0 = std::max(0.0, gamma_t - p.eta);
  r.p_field = field_integral(e1, t0, gamma_t) + field_integral(e2, t0, gamma_t);
  r.p_total = r.p_atoms + r.p_field;
  return r;
}

LossRatePoint loss_rate(const SystemParams& p, double gamma_t) {
  if (!(gamma_t >= 0.0)) throw ConfigError("loss_rate: gamma_t must be >= 0");
  p.validate();
  LossRatePoint out;
  out.gamma_t = gamma_t;
  out.regime = gamma_t > p.eta ? LossRegime::kPostArrival : LossRegime::kPreArrival;
  out.gamma_rate = loss_rate_value(p, gamma_t);
  return out;
}

double loss_rate_gradient(const SystemParams& p, double gamma_t, double d_delta) {
  if (!(d_delta > 0.0)) throw ConfigError("loss_rate_gradient: d_delta must be > 0");
  SystemParams lo = p;
  SystemParams hi = p;
  lo.delta -= d_delta;
  hi.delta += d_delta;
  return (loss_rate(hi, gamma_t).gamma_rate - loss_rate(lo, gamma_t).gamma_rate) /
         (2.0 * d_delta);
}

double loss_rate_gradient_analytic(const SystemParams& p, double gamma_t) {
  if (!(gamma_t >= 0.0)) throw ConfigError("loss_rate_gradient_analytic: gamma_t must be >= 0");
  const auto [e1, e2] = pole_expansion(p);
  const PhaseRates rates = PhaseRates::fixed_emitter2(p.eta);
  double grad = 0.0;
  for (const PoleSet* ps : {&e1, &e2}) {
    DerivativeSet d = pole_delta_derivatives(p, *ps, rates);
    residue_delta_derivatives(p, *ps, d);
    // c, dc/dt and their delta-derivatives at time t.
    auto eval = [&](double t, Complex& c, Complex& cdot, Complex& dc, Complex& dcdot) {
      c = cdot = dc = dcdot = Complex(0.0, 0.0);
      for (size_t j = 0; j < ps->entries.size(); ++j) {
        const Complex s = ps->entries[j].pole;
        const Complex r = ps->entries[j].residue;
        const Complex ds = d.entries[j].d_pole;
        const Complex dr = d.entries[j].script_r;
        const Complex e = std::exp(s * t);
        c += r * e;
        cdot += r * s * e;
        dc += (dr + r * t * ds) * e;
        dcdot += (dr * s + r * ds + r * s * t * ds) * e;
      }
    };
    Complex c, cdot, dc, dcdot;
    eval(gamma_t, c, cdot, dc, dcdot);
    grad += 2.0 * std::real(std::conj(dcdot) * c + std::conj(cdot) * dc);
    grad += 2.0 * kFieldWeight * std::real(std::conj(c) * dc);
    if (gamma_t > p.eta) {
      eval(gamma_t - p.eta, c, cdot, dc, dcdot);
      grad -= 2.0 * kFieldWeight * std::real(std::conj(c) * dc);
    }
  }
  return grad;
}

}  // namespace wqed
