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
#include <vector>

#include "wqed/dynamics.hpp"
#include "wqed/error.hpp"

namespace wqed {
namespace {

// One step interval of the solution with endpoint values and one-sided
// derivatives, enough for a cubic Hermite interpolant.
struct Segment {
  Complex y0[2];
  Complex y1[2];
  Complex d0[2];
  Complex d1[2];
};

// Cubic Hermite on a segment at fraction u of the step h.
Complex hermite(const Segment& s, int m, double u, double h) {
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  return h00 * s.y0[m] + h10 * h * s.d0[m] + h01 * s.y1[m] + h11 * h * s.d1[m];
}

}  // namespace

AmplitudeTrace amplitude_ode(const SystemParams& p, double t_max, double dt) {
  if (!(p.eta > 0.0) || !std::isfinite(p.eta)) throw ConfigError("amplitude_ode: eta must be > 0");
  if (!(dt > 0.0) || dt > 1e-2 || dt > p.eta / 10.0) {
    throw ConfigError("amplitude_ode: dt too coarse (need dt <= min(1e-2, eta/10)) at " +
                      p.describe());
  }
  if (!(t_max >= 0.0)) throw ConfigError("amplitude_ode: t_max must be >= 0");

  // Align the grid with the delay so that retarded arguments land on the
  // same fractional positions of earlier segments.
  const int lag = static_cast<int>(std::ceil(p.eta / dt - 1e-9));
  const double h = p.eta / lag;
  const int steps = static_cast<int>(std::ceil(t_max / h - 1e-9));

  std::vector<Segment> seg(static_cast<size_t>(steps));
  AmplitudeTrace tr;
  tr.method = Method::kOde;
  tr.times.resize(static_cast<size_t>(steps) + 1);
  tr.c1.resize(tr.times.size());
  tr.c2.resize(tr.times.size());

  Complex y[2] = {p.c1_0, p.c2_0};
  tr.times[0] = 0.0;
  tr.c1[0] = y[0];
  tr.c2[0] = y[1];

  auto retarded = [&](int step, double u, int m) -> Complex {
    const int j = step - lag;
    if (j < 0) return {0.0, 0.0};
    return hermite(seg[static_cast<size_t>(j)], m, u, h);
  };
  auto rhs = [&](int step, double u, const Complex* c, Complex* out) {
    const double t = (step + u) * h;
    const auto [a, b] = amplitude_rates(p, t, c[0], c[1], retarded(step, u, 0), retarded(step, u, 1));
    out[0] = a;
    out[1] = b;
  };

  for (int i = 0; i < steps; ++i) {
    Complex k1[2], k2[2], k3[2], k4[2], tmp[2];
    rhs(i, 0.0, y, k1);
    for (int m = 0; m < 2; ++m) tmp[m] = y[m] + 0.5 * h * k1[m];
    rhs(i, 0.5, tmp, k2);
    for (int m = 0; m < 2; ++m) tmp[m] = y[m] + 0.5 * h * k2[m];
    rhs(i, 0.5, tmp, k3);
    for (int m = 0; m < 2; ++m) tmp[m] = y[m] + h * k3[m];
    rhs(i, 1.0, tmp, k4);
    Segment& s = seg[static_cast<size_t>(i)];
    for (int m = 0; m < 2; ++m) {
      s.y0[m] = y[m];
      s.d0[m] = k1[m];
      y[m] += h / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
      s.y1[m] = y[m];
    }
    rhs(i, 1.0, y, s.d1);
    tr.times[i + 1] = (i + 1) * h;
    tr.c1[i + 1] = y[0];
    tr.c2[i + 1] = y[1];
  }
  return tr;
}

}  // namespace wqed
