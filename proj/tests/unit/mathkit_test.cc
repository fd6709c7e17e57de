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
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "wqed/error.hpp"
#include "wqed/mathkit.hpp"

namespace wqed {
namespace {

using boost::math::quadrature::gauss_kronrod;

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// Ascending power series of I_nu(z) in long double.
std::complex<long double> bessel_series(long double nu, std::complex<long double> z) {
  const std::complex<long double> q = z * z / 4.0L;
  std::complex<long double> term = std::pow(z / 2.0L, nu) / std::tgamma(nu + 1.0L);
  std::complex<long double> sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<long double>(m) * (m + nu));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

Complex integrate(const std::function<Complex(double)>& f, double a, double b) {
  const double re = gauss_kronrod<double, 61>::integrate(
      [&](double x) { return f(x).real(); }, a, b, 15, 1e-14);
  const double im = gauss_kronrod<double, 61>::integrate(
      [&](double x) { return f(x).imag(); }, a, b, 15, 1e-14);
  return {re, im};
}

TEST_SUITE("mathkit") {
  TEST_CASE("lambert_w trivial values") {
    CHECK(std::abs(lambert_w(0, 0.0)) == 0.0);
    CHECK(std::abs(lambert_w(0, std::numbers::e) - 1.0) < 1e-15);
  }

  TEST_CASE("lambert_w matches reference values on several branches") {
    struct Ref {
      int k;
      Complex z;
      Complex w;
    };
    const Ref refs[] = {
        {3, {2.7182818284590452, 0.0}, {-1.8490147241804799, 17.171493579508931}},
        {-2, {0.5, -2.0}, {-1.7866338910485153, -12.175693988905925}},
        {1, {-0.2, 0.1}, {-3.5485873815198944, 6.9162792186994359}},
        {-1, {-0.3, 0.0}, {-1.7813370234216277, 0.0}},
        {7, {100.0, 50.0}, {0.95767998390407278, 42.897469584232189}},
        {-250, {3.0, 0.0}, {-6.2597306094852143, -1569.221541421787}},
    };
    for (const auto& r : refs) {
      CAPTURE(r.k);
      CHECK(rel(lambert_w(r.k, r.z), r.w) < 1e-13);
    }
  }

  TEST_CASE("lambert_w defining identity on an annulus for every branch") {
    double worst = 0.0;
    for (int k = -250; k <= 250; ++k) {
      for (int j = 0; j < 20; ++j) {
        const double radius = 0.1 * std::pow(1e4, j / 19.0);
        const double angle = -3.0 + 0.31 * j;
        const Complex z = std::polar(radius, angle);
        const Complex w = lambert_w(k, z);
        worst = std::max(worst, std::abs(w * std::exp(w) - z) / std::abs(z));
      }
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("lambert_w picks the right branch just below the negative real axis") {
    const Complex z(-0.43071506316473090868, -6.7728220827983505175e-6);
    CHECK(rel(lambert_w(-1, z), {-2.9258611054447358984, -7.4811576932471225773}) < 1e-12);
    CHECK(rel(lambert_w(0, z), {-0.89447488552616960403, -0.556672621885778991}) < 1e-12);
    CHECK(rel(lambert_w(1, z), {-0.89452942080665212261, 0.55669373602465286974}) < 1e-12);
  }

  TEST_CASE("lambert_w branch index from w + log w = log z + 2 pi i k") {
    int wrong = 0;
    for (int k = -30; k <= 30; ++k) {
      for (double radius : {0.05, 0.3, 0.37, 0.43, 1.0, 20.0}) {
        for (double angle : {-3.14159, -2.0, -0.5, 0.5, 2.0, 3.14159}) {
          const Complex z = std::polar(radius, angle);
          const Complex w = lambert_w(k, z);
          const double found = (w + std::log(w) - std::log(z)).imag() / (2.0 * std::numbers::pi);
          if (std::lround(found) != k) ++wrong;
        }
      }
    }
    CHECK(wrong == 0);
  }

  TEST_CASE("lambert_w branch imaginary parts follow the standard convention") {
    for (int k : {-40, -3, 2, 9, 120}) {
      const Complex w = lambert_w(k, {5.0, 1.0});
      CHECK(w.imag() > (2 * k - 1) * std::numbers::pi);
      CHECK(w.imag() <= (2 * k + 1) * std::numbers::pi);
    }
  }

  TEST_CASE("bessel_i_half half-order identity and references") {
    const Complex z = 2.0;
    const Complex closed = std::sqrt(2.0 / (std::numbers::pi * z)) * std::sinh(z);
    CHECK(rel(bessel_i_half(0, z), closed) < 1e-14);
    struct Ref {
      int n;
      Complex z;
      Complex value;
    };
    const Ref refs[] = {
        {0, {2.0, 0.0}, {2.046236863089055, 0.0}},
        {3, {1.0, 1.0}, {-0.024580272022323811, 0.0071111239234878862}},
        {5, {0.0, 7.0}, {-0.25699531157640582, 0.25699531157640582}},
        {10, {4.0, -3.0}, {0.00081904059081745939, -0.001244118004006399}},
        {2, {40.0, 10.0}, {-12135629793729256.0, -6176617539215768.2}},
    };
    for (const auto& r : refs) {
      CAPTURE(r.n);
      CHECK(rel(bessel_i_half(r.n, r.z), r.value) < 1e-12);
    }
  }

  TEST_CASE("bessel_i_half equals the power series") {
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
      for (double arg : {0.0, std::numbers::pi / 4, std::numbers::pi / 2}) {
        for (double r : {1e-3, 0.1, 1.0, 3.0, 7.5, 10.0}) {
          const Complex z = std::polar(r, arg);
          const auto ref = bessel_series(n + 0.5L, {z.real(), z.imag()});
          const Complex want(static_cast<double>(ref.real()), static_cast<double>(ref.imag()));
          worst = std::max(worst, rel(bessel_i_half(n, z), want));
        }
      }
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("bessel_i_half small argument uses the leading term") {
    const Complex z(3e-9, 1e-9);
    const Complex lead = std::pow(z / 2.0, 2.5) / std::tgamma(3.5);
    CHECK(rel(bessel_i_half(2, z), lead) < 1e-12);
  }

  TEST_CASE("bessel_i_half derivative recurrence") {
    const double h = 1e-5;
    for (int n = 1; n <= 8; ++n) {
      for (Complex z : {Complex(1.3, 0.4), Complex(0.0, 5.0), Complex(6.0, -2.0)}) {
        const Complex d = (bessel_i_half(n, z + h) - bessel_i_half(n, z - h)) / (2.0 * h);
        const Complex rhs = bessel_i_half(n + 1, z) + bessel_i_half(n - 1, z);
        CHECK(std::abs(2.0 * d - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
      }
    }
  }

  TEST_CASE("normalized_bessel_j_half matches references") {
    struct Ref {
      int h;
      double y;
      double value;
    };
    const Ref refs[] = {
        {0, 0.3, 0.95533648912560602},   {1, 2.5, 0.2393888576415826},
        {5, 10.0, -0.0099781874436218631}, {20, 3.0, 0.89580001828330903},
        {40, 80.0, -2.6702269496370804e-18}, {3, 1e-3, 0.99999992857143056},
    };
    for (const auto& r : refs) {
      CAPTURE(r.h);
      CAPTURE(r.y);
      const auto v = normalized_bessel_j_half(r.h, 1, r.y);
      REQUIRE(v.size() == 1);
      CHECK(std::abs(v[0].value() - r.value) <= 1e-12 * std::abs(r.value));
    }
  }

  TEST_CASE("normalized_bessel_j_half low orders are elementary") {
    for (double y : {0.0, 0.2, 1.7, 12.0, 300.0}) {
      const auto v = normalized_bessel_j_half(0, 2, y);
      CHECK(std::abs(v[0].value() - std::cos(y)) < 1e-13);
      const double sinc = y == 0.0 ? 1.0 : std::sin(y) / y;
      CHECK(std::abs(v[1].value() - sinc) < 1e-13);
    }
  }

  TEST_CASE("muller_root examples") {
    const Complex a = muller_root([](Complex x) { return x * x - 4.0; }, {1.5, 1.8, 2.2});
    CHECK(std::abs(a - 2.0) < 1e-7);
    const auto f = [](Complex x) { return x * x + 1.0; };
    const Complex b = muller_root(f, {Complex(0.1), Complex(0.2, 0.1), Complex(0.0, 0.3)});
    CHECK(std::abs(f(b)) <= 1e-7);
  }

  TEST_CASE("muller_root is deterministic") {
    const auto f = [](Complex x) { return std::exp(x) - 3.0 * x; };
    const std::array<Complex, 3> seeds{Complex(0.1), Complex(0.5, 0.2), Complex(1.0, -0.1)};
    const Complex a = muller_root(f, seeds);
    const Complex b = muller_root(f, seeds);
    CHECK(a == b);
  }

  TEST_CASE("muller_root reports an exhausted iteration cap") {
    MullerOptions opt;
    opt.max_iter = 3;
    opt.tol = 1e-300;
    CHECK_THROWS_AS(muller_root([](Complex x) { return std::exp(x) + 1.0; },
                                {Complex(0.0), Complex(0.3), Complex(0.6)}, opt),
                    NumericalError);
  }

  TEST_CASE("exp_moments trivial values") {
    const ExpMoments g0 = exp_moments(1.0, 0.0);
    CHECK(std::abs(g0.g1 - 1.0) < 1e-15);
    const ExpMoments g1 = exp_moments(1.0, 1.0);
    CHECK(std::abs(g1.g2) < 1e-15);
  }

  TEST_CASE("exp_moment_diff matches reference integrals") {
    const ExpMoments g = exp_moment_diff({0.3, 0.7}, 0.0, 2.0);
    CHECK(rel(g.g1, {1.8100597135420063, 1.7618822679077322}) < 1e-13);
    CHECK(rel(g.g2, {1.5919547691564014, 2.3832078446207829}) < 1e-13);
    CHECK(rel(g.g3, {1.909783950783651, 3.5972048820559152}) < 1e-13);
  }

  TEST_CASE("exp_moment_diff equals quadrature across kernel scales") {
    for (double mag : {1e-8, 1e-3, 1.0, 10.0}) {
      for (double arg : {0.3, 2.0, -1.2, std::numbers::pi / 2}) {
        const Complex u = std::polar(mag, arg);
        for (auto [a, b] : {std::pair{0.0, 2.0}, std::pair{0.5, 3.0}, std::pair{1.0, 1.5}}) {
          const ExpMoments g = exp_moment_diff(u, a, b);
          const Complex q1 = integrate([&](double x) { return std::exp(u * x); }, a, b);
          const Complex q2 = integrate([&](double x) { return x * std::exp(u * x); }, a, b);
          const Complex q3 = integrate([&](double x) { return x * x * std::exp(u * x); }, a, b);
          CAPTURE(u);
          CHECK(rel(g.g1, q1) <= 1e-9);
          CHECK(rel(g.g2, q2) <= 1e-9);
          CHECK(rel(g.g3, q3) <= 1e-9);
        }
      }
    }
  }
}

}  // namespace
}  // namespace wqed
