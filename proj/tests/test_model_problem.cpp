// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "specboltz/model_problem.hpp"
#include "specboltz/ode.hpp"

using namespace specboltz;

TEST_CASE("background kinematics") {
  ScenarioConfig cfg = scenario_preset("reheating-r1.4");
  const auto bg0 = background(0.0, cfg);
  CHECK(bg0.a == 1.0);
  CHECK(bg0.H == doctest::Approx(0.1).epsilon(1e-14));  // 1/(2b), b = 5
  CHECK(bg0.T_eq == doctest::Approx(1.0).epsilon(1e-14));

  // (a T_eq)(t) -> R
  const auto late = background(200.0, cfg);
  CHECK(std::abs(late.a * late.T_eq - cfg.R) < 1e-12);

  // H = adot/a by finite differences
  const double h = 1e-6;
  for (double t : {0.0, 1.0, 7.3}) {
    const double fd = (background(t + h, cfg).a - background(t + (t > 0 ? -h : 0), cfg).a) /
                      ((t > 0 ? 2 : 1) * h) / background(t, cfg).a;
    CHECK(std::abs(fd - background(t, cfg).H) < 1e-8);
  }

  cfg.R = 1.0;
  for (double t : {0.0, 2.0, 9.0}) {
    const auto bg = background(t, cfg);
    CHECK(bg.T_eq == doctest::Approx(1.0 / bg.a).epsilon(1e-15));
  }
}

TEST_CASE("relaxation collision operator") {
  ScenarioConfig cfg = scenario_preset("attractor-u0.75");
  const auto bg = background(2.0, cfg);
  const double feq = equilibrium_f(1.3 / bg.T_eq, cfg.upsilon_target);
  CHECK(relaxation_collision(1.3, 2.0, feq, cfg) == doctest::Approx(0.0).epsilon(1e-15));

  ScenarioConfig free_cfg = cfg;
  free_cfg.M = 0.0;
  CHECK(relaxation_collision(1.3, 2.0, 0.2, free_cfg) == 0.0);

  // p = 0: M (Ups_t/(1+Ups_t) - f)
  const double expected = cfg.M * (cfg.upsilon_target / (1.0 + cfg.upsilon_target) - 0.1);
  CHECK(relaxation_collision(0.0, 4.0, 0.1, cfg) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("exact solution at t = 0 is the initial Fermi-Dirac") {
  const ScenarioConfig cfg = scenario_preset("reheating-r2.0");
  for (double z : {0.0, 0.5, 3.0, 11.0}) {
    CHECK(std::abs(exact_solution(z, 0.0, 1.0, cfg) - 1.0 / (std::exp(z) + 1.0)) < 1e-15);
  }
}

TEST_CASE("late-time limit approaches chemical equilibrium at the reheated temperature") {
  const ScenarioConfig cfg = scenario_preset("reheating-r1.4");
  const double t = 32.0;
  const auto bg = background(t, cfg);
  for (double y : {0.5, 2.0, 6.0}) {
    const double limit = equilibrium_f(y / (bg.a * bg.T_eq), cfg.upsilon_target);
    CHECK(std::abs(exact_solution_y(y, t, cfg) - limit) < 1e-9);
  }
}

TEST_CASE("exact solution satisfies the comoving-coordinate equation") {
  const ScenarioConfig cfg = scenario_preset("reheating-r1.4");
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ydist(0.05, 12.0);
  std::uniform_real_distribution<double> tdist(0.3, 9.5);
  const double h = 1e-5;
  for (int trial = 0; trial < 25; ++trial) {
    const double y = ydist(rng), t = tdist(rng);
    const double dfdt =
        (exact_solution_y(y, t + h, cfg) - exact_solution_y(y, t - h, cfg)) / (2 * h);
    const auto bg = background(t, cfg);
    const double rhs = cfg.M * (equilibrium_f(y / (bg.a * bg.T_eq), cfg.upsilon_target) -
                                exact_solution_y(y, t, cfg));
    CHECK(std::abs(dfdt - rhs) < 1e-6);
  }
}

TEST_CASE("exact solution vs method-of-lines oracle") {
  // In y coordinates each momentum decouples into a scalar relaxation ODE;
  // integrating it directly is an independent route to the same value.
  const ScenarioConfig cfg = scenario_preset("reheating-r1.1");
  IntegratorConfig icfg;
  icfg.rel_tol = 1e-12;
  icfg.abs_tol = 1e-14;
  for (double y : {0.4, 1.0, 2.4, 7.0}) {
    OdeRhs rhs = [&, y](double t, std::span<const double> f, std::span<double> df) {
      const auto bg = background(t, cfg);
      df[0] = cfg.M * (equilibrium_f(y / (bg.a * bg.T_eq), cfg.upsilon_target) - f[0]);
    };
    const std::vector<double> f0{equilibrium_f(y, 1.0)};
    const auto s = integrate_ode(rhs, f0, 0.0, 1.0, {}, icfg);
    CHECK(std::abs(s.y_end[0] - exact_solution_y(y, 1.0, cfg)) < 1e-8);
  }
}

TEST_CASE("monotone bounds") {
  for (const char* name : {"reheating-r2.0", "attractor-u1.5", "attractor-u0.5"}) {
    const ScenarioConfig cfg = scenario_preset(name);
    const double bound = std::max(0.5, cfg.upsilon_target / (1.0 + cfg.upsilon_target));
    for (double t : {0.0, 1.0, 5.0, 10.0})
      for (double y = 0.0; y < 20.0; y += 0.8) {
        const double f = exact_solution_y(y, t, cfg);
        CHECK(f >= 0.0);
        CHECK(f <= bound * (1.0 + 1e-12));
      }
  }
}

TEST_CASE("stationary case R = 1, target fugacity 1") {
  ScenarioConfig cfg;
  cfg.R = 1.0;
  cfg.upsilon_target = 1.0;
  for (double t : {0.5, 3.0, 10.0})
    for (double y : {0.2, 1.5, 6.0})
      CHECK(std::abs(exact_solution_y(y, t, cfg) - equilibrium_f(y, 1.0)) < 1e-12);
}

TEST_CASE("presets and validation") {
  CHECK(scenario_preset_names().size() == 7);
  for (const auto& name : scenario_preset_names()) {
    const auto cfg = scenario_preset(name);
    cfg.validate();
    CHECK(cfg.b == 5.0);
    CHECK(cfg.t_final == 10.0);
    CHECK(cfg.M == 1.0);
  }
  CHECK_THROWS_AS(scenario_preset("no-such-thing"), ConfigError);
  ScenarioConfig bad;
  bad.b = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
