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

#include "doctest.h"
#include "wqed/error.hpp"
#include "wqed/fieldspace.hpp"

namespace wqed {
namespace {

SystemParams make(double eta, double delta) {
  SystemParams p;
  p.eta = eta;
  p.delta = delta;
  return p;
}

TEST_SUITE("fieldspace") {
  TEST_CASE("field weight is calibrated to one half") {
    CHECK(kKappa / (8.0 * std::numbers::pi) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(region_probability(make(2.0, 1.0), 1.0).kappa == kKappa);
  }

  TEST_CASE("all probability starts in the first emitter") {
    const RegionProbability r = region_probability(make(2.0, 0.7), 0.0);
    CHECK(r.p_atoms == 1.0);
    CHECK(r.p_field == 0.0);
    CHECK(r.p_total == 1.0);
  }

  TEST_CASE("probability stays within bounds") {
    for (double t : {0.3, 1.9, 2.1, 5.0, 13.0}) {
      const RegionProbability r = region_probability(make(2.0, 1.0), t);
      CHECK(r.p_total >= 0.0);
      CHECK(r.p_total <= 1.0 + 1e-6);
    }
  }

  TEST_CASE("single emitter energy balance") {
    SystemParams p = make(3.0, 0.2);
    p.beta = 1e-9;
    for (double t : {0.1, 1.0, 2.9}) {
      const LossRatePoint l = loss_rate(p, t);
      CHECK(l.regime == LossRegime::kPreArrival);
      CHECK(l.gamma_rate == doctest::Approx(-0.5 * std::exp(-t)).epsilon(1e-8));
    }
    CHECK(loss_rate(p, 3.5).regime == LossRegime::kPostArrival);
  }

  TEST_CASE("loss rate is the time derivative of the region probability") {
    const double h = 1e-4;
    for (double delta : {0.0, 1.0}) {
      const SystemParams p = make(2.0, delta);
      for (double t : {0.1, 0.8, 1.5, 2.5, 3.9, 4.2, 7.7, 12.0, 20.0}) {
        const double fd =
            (region_probability(p, t + h).p_total - region_probability(p, t - h).p_total) /
            (2.0 * h);
        CAPTURE(delta);
        CAPTURE(t);
        CHECK(std::abs(fd - loss_rate(p, t).gamma_rate) <= 1e-5);
      }
    }
  }

  TEST_CASE("pole double sums agree with quadrature after the first round trip") {
    SystemParams p = make(2.0, 1.0);
    const auto [e1, e2] = pole_expansion(p);
    for (double t : {3.0, 6.0}) {
      const RegionProbability a = region_probability(p, t);
      const RegionProbability b = region_probability(p, e1, e2, t);
      CHECK(std::abs(a.p_field - b.p_field) < 1e-5);
    }
  }

  TEST_CASE("bound state keeps 1 / (2 + eta)") {
    for (double eta : {1.0, 2.0}) {
      const SystemParams p = make(eta, 0.0);
      const RegionProbability r = region_probability(p, 1000.0);
      CHECK(r.p_total == doctest::Approx(1.0 / (2.0 + eta)).epsilon(1e-6));
      CHECK(r.p_field == doctest::Approx(r.p_atoms * eta / 2.0).epsilon(1e-6));
    }
    CHECK(std::abs(loss_rate(make(2.0, 0.0), 1000.0).gamma_rate) <= 1e-8);
  }

  TEST_CASE("detuning prevents a bound state") {
    CHECK(region_probability(make(2.0, 2.0), 1000.0).p_total < 0.05);
  }

  TEST_CASE("fields vanish outside the emitted light cones") {
    const SystemParams p = make(2.0, 0.5);
    // Before the first arrival only the rightward wave from emitter 1 exists.
    const double t = 0.8;
    for (double x : {-0.5, -0.3, -0.2 + 1e-9, 0.0, 0.4, 0.5}) {
      const SpatialAmplitudes s = spatial_amplitudes(p, x, t);
      CHECK(s.b == Complex(0.0));
      const bool inside = t - p.eta * (x + 0.5) >= 0.0;
      CHECK((std::abs(s.a) > 0.0) == inside);
    }
    CHECK_THROWS_AS(spatial_amplitudes(p, 0.6, t), ConfigError);
  }

  TEST_CASE("right-moving amplitude carries the retarded emitter amplitude") {
    const SystemParams p = make(2.0, 0.5);
    const double t = 3.3, x = 0.1;
    const SpatialAmplitudes s = spatial_amplitudes(p, x, t);
    const double tr = t - p.eta * (x + 0.5);
    const double want = std::norm(series_point(p, tr).first) / (8.0 * std::numbers::pi);
    CHECK(std::norm(s.a) == doctest::Approx(want).epsilon(1e-13));
  }

  TEST_CASE("region field matches the spatial integral of the amplitudes") {
    const SystemParams p = make(2.0, 0.0);
    const double t = 3.0 * p.eta;
    const int n = 20001;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = -0.5 + static_cast<double>(i) / (n - 1);
      const SpatialAmplitudes s = spatial_amplitudes(p, x, t);
      const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      sum += w * (std::norm(s.a) + std::norm(s.b)) / (n - 1);
    }
    // Position integral over one spacing times eta times kappa.
    const double field = kKappa * p.eta * sum;
    CHECK(field == doctest::Approx(region_probability(p, t).p_field).epsilon(1e-6));
  }

  TEST_CASE("detuning gradient") {
    CHECK(std::abs(loss_rate_gradient(make(2.0, 0.0), qbic_time(2.0))) <= 1e-3);
    CHECK_THROWS_AS(loss_rate_gradient(make(2.0, 0.0), 1.0, 0.0), ConfigError);
    const double pts[][3] = {{2.0, 1.0, 3.0},  {1.5, 0.6, 4.2}, {3.0, 2.0, 7.5},
                             {5.0, 0.8, 12.0}, {2.0, 2.5, 2.5}};
    for (const auto& q : pts) {
      const SystemParams p = make(q[0], q[1]);
      CAPTURE(q[0]);
      CAPTURE(q[1]);
      CHECK(std::abs(loss_rate_gradient(p, q[2]) - loss_rate_gradient_analytic(p, q[2])) <= 1e-4);
    }
    CHECK(qbic_time(3.0) == 3.0 + 1e-3);
  }
}

}  // namespace
}  // namespace wqed
