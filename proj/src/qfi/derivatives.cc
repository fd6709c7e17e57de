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
#include "wqed/qfi.hpp"

namespace wqed {
namespace {

struct EmitterTerms {
  double sg;      // sign of the detuning term
  double phase;   // phi_m
  double d_phase; // d phi_m / d delta
  Complex own;
  Complex other;
};

EmitterTerms terms(const SystemParams& p, int emitter, const PhaseRates& rates) {
  if (emitter == 1) return {-1.0, p.phase1(), rates.d_phi1, p.c1_0, p.c2_0};
  return {1.0, p.phase2(), rates.d_phi2, p.c2_0, p.c1_0};
}

[[noreturn]] void degenerate(const char* where, const PoleEntry& e, const SystemParams& p) {
  std::ostringstream msg;
  msg << where << ": vanishing slope on branch (" << (e.sigma > 0 ? '+' : '-') << "," << e.k
      << ") at " << p.describe();
  throw NumericalError(msg.str());
}

}  // namespace

DerivativeSet pole_delta_derivatives(const SystemParams& p, const PoleSet& poles,
                                     const PhaseRates& rates) {
  const Complex i(0.0, 1.0);
  const EmitterTerms m = terms(p, poles.emitter, rates);
  const double b2 = 0.25 * p.beta * p.beta;
  DerivativeSet out;
  out.emitter = poles.emitter;
  out.rates = rates;
  out.entries.resize(poles.entries.size());
  for (size_t j = 0; j < poles.entries.size(); ++j) {
    const Complex s = poles.entries[j].pole;
    const Complex fb = b2 * std::exp(2.0 * i * m.phase - 2.0 * p.eta * s);
    const Complex slope = 2.0 * s + 1.0 + i * m.sg * p.delta + 2.0 * p.eta * fb;
    if (std::abs(slope) <= 1e-12) degenerate("pole_delta_derivatives", poles.entries[j], p);
    const Complex df = i * m.sg * (s + 0.5) - 2.0 * i * m.d_phase * fb;
    out.entries[j].d_pole = -df / slope;
  }
  return out;
}

void residue_delta_derivatives(const SystemParams& p, const PoleSet& poles,
                               DerivativeSet& dpoles) {
  const Complex i(0.0, 1.0);
  const EmitterTerms m = terms(p, poles.emitter, dpoles.rates);
  const double b2 = 0.25 * p.beta * p.beta;
  for (size_t j = 0; j < poles.entries.size(); ++j) {
    const Complex s = poles.entries[j].pole;
    const Complex ds = dpoles.entries[j].d_pole;
    const Complex fb = b2 * std::exp(2.0 * i * m.phase - 2.0 * p.eta * s);
    const Complex cross = 0.5 * p.beta * std::exp(i * m.phase - p.eta * s);
    const Complex slope = 2.0 * s + 1.0 + i * m.sg * p.delta + 2.0 * p.eta * fb;
    if (std::abs(slope) <= 1e-12) degenerate("residue_delta_derivatives", poles.entries[j], p);
    const Complex num = m.own * (s + i * m.sg * p.delta + 0.5) - m.other * cross;
    const Complex d_num =
        m.own * (ds + i * m.sg) - m.other * cross * (i * m.d_phase - p.eta * ds);
    const Complex d_slope =
        2.0 * ds + i * m.sg + 2.0 * p.eta * fb * (2.0 * i * m.d_phase - 2.0 * p.eta * ds);
    dpoles.entries[j].script_r = (d_num * slope - num * d_slope) / (slope * slope);
  }
}

Complex amplitude_delta_derivative(const PoleSet& poles, const DerivativeSet& dpoles,
                                   double t) {
  Complex sum(0.0, 0.0);
  for (size_t j = 0; j < poles.entries.size(); ++j) {
    const PoleEntry& e = poles.entries[j];
    const DerivativeEntry& d = dpoles.entries[j];
    sum += (d.script_r + e.residue * t * d.d_pole) * std::exp(e.pole * t);
  }
  return sum;
}

}  // namespace wqed
