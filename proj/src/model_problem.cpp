// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#include "specboltz/model_problem.hpp"

#include <cmath>

#include "specboltz/errors.hpp"

namespace specboltz {

void ScenarioConfig::validate() const {
  if (!(b > 0.0)) throw ConfigError("scenario: b must be > 0");
  if (!(R > 0.0)) throw ConfigError("scenario: R must be > 0");
  if (!(upsilon_target > 0.0))
    throw ConfigError("scenario: upsilon_target must be > 0");
  if (M < 0.0) throw ConfigError("scenario: M must be >= 0");
  if (!(t_final > 0.0)) throw ConfigError("scenario: t_final must be > 0");
  if (n_modes < 2) throw ConfigError("scenario: n_modes must be >= 2");
  if (!(g_p > 0.0)) throw ConfigError("scenario: g_p must be > 0");
  if (!(ode_rel_tol > 0.0) || !(ode_abs_tol > 0.0) || !(quad_rel_tol > 0.0) ||
      !(quad_abs_tol > 0.0))
    throw ConfigError("scenario: tolerances must be > 0");
  if (sample_count < 2) throw ConfigError("scenario: sample_count must be >= 2");
}

Background background(double t, const ScenarioConfig& cfg) {
  Background bg;
  bg.a = std::sqrt((t + cfg.b) / cfg.b);
  bg.H = 1.0 / (2.0 * (t + cfg.b));
  bg.T_eq =
      (1.0 + (1.0 - std::exp(-t)) / (std::exp(-(t - cfg.b)) + 1.0) * (cfg.R - 1.0)) /
      bg.a;
  return bg;
}

double equilibrium_f(double x, double upsilon) {
  const double ue = upsilon * std::exp(-x);
  return ue / (1.0 + ue);
}

double relaxation_collision(double p, double t, double f_value,
                            const ScenarioConfig& cfg) {
  const Background bg = background(t, cfg);
  return cfg.M * (equilibrium_f(p / bg.T_eq, cfg.upsilon_target) - f_value);
}

double exact_solution_y(double y, double t, const ScenarioConfig& cfg,
                        double s_tol) {
  const double free_part = std::exp(-cfg.M * t) * equilibrium_f(y, 1.0);
  if (cfg.M == 0.0 || t <= 0.0) return free_part;
  QuadratureOptions opt;
  opt.rel_tol = s_tol;
  opt.abs_tol = s_tol;
  const auto r = integrate_finite(
      [&](double s) {
        const Background bg = background(s, cfg);
        return cfg.M * std::exp(cfg.M * (s - t)) *
               equilibrium_f(y / (bg.a * bg.T_eq), cfg.upsilon_target);
      },
      0.0, t, opt);
  return r.value + free_part;
}

double exact_solution(double z, double t, double T_of_t,
                      const ScenarioConfig& cfg, double s_tol) {
  return exact_solution_y(background(t, cfg).a * T_of_t * z, t, cfg, s_tol);
}

ScenarioConfig scenario_preset(std::string_view name) {
  ScenarioConfig cfg;
  cfg.name = std::string(name);
  cfg.upsilon_target = 1.0;
  if (name == "reheating-r1.1") cfg.R = 1.1;
  else if (name == "reheating-r1.4") cfg.R = 1.4;
  else if (name == "reheating-r2.0") cfg.R = 2.0;
  else if (name == "attractor-u1.5") { cfg.R = 1.0; cfg.upsilon_target = 1.5; }
  else if (name == "attractor-u0.9") { cfg.R = 1.0; cfg.upsilon_target = 0.9; }
  else if (name == "attractor-u0.75") { cfg.R = 1.0; cfg.upsilon_target = 0.75; }
  else if (name == "attractor-u0.5") { cfg.R = 1.0; cfg.upsilon_target = 0.5; }
  else
    throw ConfigError("unknown scenario preset '" + std::string(name) + "'");
  return cfg;
}

std::vector<std::string> scenario_preset_names() {
  return {"reheating-r1.1", "reheating-r1.4", "reheating-r2.0",
          "attractor-u1.5", "attractor-u0.9", "attractor-u0.75",
          "attractor-u0.5"};
}

}  // namespace specboltz
