// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "specboltz/quadrature.hpp"

using namespace specboltz;

namespace {

// independent oracle: plain trapezoid at step h on [0, hi]
double trapezoid(const Integrand& g, double hi, double h) {
  const long n = long(hi / h);
  double s = 0.5 * (g(0.0) + g(n * h));
  for (long i = 1; i < n; ++i) s += g(i * h);
  return s * h;
}

}  // namespace

TEST_CASE("zero integrand") {
  const auto r = integrate_semi_infinite([](double) { return 0.0; });
  CHECK(r.value == 0.0);
  CHECK(r.error_estimate == 0.0);
  CHECK(r.evaluations > 0);
}

TEST_CASE("gamma function integrand z^2 e^-z") {
  const auto r = integrate_semi_infinite([](double z) { return z * z * std::exp(-z); });
  CHECK(std::abs(r.value - 2.0) < 1e-12);  // Gamma(3) = 2
}

TEST_CASE("Fermi-Dirac integrals vs closed forms and trapezoid oracle") {
  auto f2 = [](double z) { return z * z / (std::exp(z) + 1.0); };
  auto f3 = [](double z) { return z * z * z / (std::exp(z) + 1.0); };

  // (3/2) zeta(3) and 7 pi^4/120
  const double i2 = 1.8030853547393914;
  const double i3 = 5.6821969769834755;
  CHECK(std::abs(integrate_semi_infinite(f2).value - i2) < 1e-10);
  CHECK(std::abs(integrate_semi_infinite(f3).value - i3) < 1e-10);

  // trapezoid endpoint corrections vanish to O(h^4) for these integrands
  CHECK(std::abs(trapezoid(f2, 60.0, 0.004) - i2) < 1e-10);
  CHECK(std::abs(trapezoid(f3, 70.0, 0.004) - i3) < 1e-10);
}

TEST_CASE("tail cutoff") {
  CHECK(std::abs(tail_cutoff(1.0, 0, std::exp(-40.0)) - 40.0) < 1e-6);
  const double z = tail_cutoff(1.0, 3, 1e-16);
  CHECK(z >= 40.0);
  CHECK(z <= 80.0);
  // residual tail at the returned point actually meets the bound
  const double tail = (z * z * z + 3 * z * z + 6 * z + 6) * std::exp(-z);
  CHECK(tail <= 1e-16 * (1.0 + 1e-6));
  CHECK(tail_cutoff(1.0, 3, 1e-16) >= tail_cutoff(1.0, 3, 1e-8));
  CHECK(tail_cutoff(0.5, 2, 1e-12) > tail_cutoff(1.0, 2, 1e-12));
}

TEST_CASE("linearity on random smooth integrands") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 8; ++trial) {
    const double p1 = 1.0 + trial % 3, p2 = 2.0 + trial % 2;
    auto g1 = [p1](double z) { return std::pow(z, p1) * std::exp(-z); };
    auto g2 = [p2](double z) { return std::cos(0.5 * z) * std::exp(-0.7 * z) + std::pow(z, p2) * std::exp(-z); };
    const double a = coef(rng), b = coef(rng);
    const double lhs =
        integrate_semi_infinite([&](double z) { return a * g1(z) + b * g2(z); }).value;
    const double rhs = a * integrate_semi_infinite(g1).value +
                       b * integrate_semi_infinite(g2).value;
    CHECK(std::abs(lhs - rhs) < 1e-11 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("exactness on decaying polynomials") {
  double factorial = 1.0;
  for (int k = 0; k <= 12; ++k) {
    if (k > 0) factorial *= k;
    QuadratureOptions opt;
    opt.decay_rate = 1.0;
    opt.poly_degree = k;
    const double v =
        integrate_semi_infinite([k](double z) { return std::pow(z, k) * std::exp(-z); }, opt)
            .value;
    CHECK(std::abs(v - factorial) < 1e-12 * std::max(1.0, factorial));
  }
}

TEST_CASE("stability under cutoff growth") {
  auto g = [](double z) { return z * z / (std::exp(z) + 1.0); };
  QuadratureOptions opt;
  const double z0 = tail_cutoff(1.0, 2, 0.01 * opt.abs_tol);
  const double v0 = integrate_finite(g, 0.0, z0, opt).value;
  const double v1 = integrate_finite(g, 0.0, z0 + 25.0, opt).value;
  CHECK(std::abs(v1 - v0) < opt.abs_tol);
}

TEST_CASE("error reporting") {
  CHECK_THROWS_AS(
      integrate_semi_infinite([](double z) { return z < 1.0 ? 0.0 : std::nan(""); }),
      NonFiniteIntegrand);
  QuadratureOptions tight;
  tight.max_panels = 4;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 1e-300;
  CHECK_THROWS_AS(
      integrate_semi_infinite([](double z) { return std::exp(-z) * std::cos(20.0 * z); }, tight),
      NonConvergence);
}

TEST_CASE("finite interval") {
  const auto r = integrate_finite([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(std::abs(r.value - 2.0) < 1e-13);
}
