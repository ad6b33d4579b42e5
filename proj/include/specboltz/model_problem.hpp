// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "specboltz/quadrature.hpp"

namespace specboltz {

// Exactly solvable relaxation problem: the distribution is driven at rate M
// toward a kinetic-equilibrium shape at a prescribed temperature schedule
// T_eq(t) and fugacity upsilon_target, inside a diluting background
// a(t) = ((t+b)/b)^{1/2}.  Units are chosen so M = 1 by default.
struct ScenarioConfig {
  std::string name = "custom";
  double b = 5.0;               // dilution timescale
  double R = 1.0;               // asymptotic reheating ratio, (a T_eq) -> R
  double upsilon_target = 1.0;  // fugacity of the attractor distribution
  double M = 1.0;               // relaxation rate
  double t_final = 10.0;
  int n_modes = 4;
  double g_p = 2.0;  // degeneracy

  double ode_rel_tol = 1e-13;
  double ode_abs_tol = 1e-13;
  double quad_rel_tol = 1e-13;
  double quad_abs_tol = 1e-15;

  // TForm runs while max_k |c_k| > switch_threshold_factor * max_k |c_k(0)|,
  // then the integration restarts in EpsForm (T = (1+eps)/a).
  double switch_threshold_factor = 1e-8;
  // Basis/matrix tables are refreshed when |Upsilon - Upsilon_table| exceeds
  // this; 0 means they are evaluated exactly at the current Upsilon.
  double refresh_delta_upsilon = 0.0;
  int sample_count = 401;  // dense output times, uniform on [0, t_final]

  void validate() const;
};

struct Background {
  double a;
  double H;
  double T_eq;
};

struct Moments {
  double n = 0.0;    // particle number density
  double rho = 0.0;  // energy density
};

// a = ((t+b)/b)^{1/2}, H = 1/(2(t+b)),
// T_eq = (1/a) [1 + (1-e^{-t})/(e^{-(t-b)}+1) (R-1)]; R = 1 reduces to the
// pure-dilution schedule T_eq = 1/a used by the attractor scenarios.
Background background(double t, const ScenarioConfig& cfg);

// 1/(e^x / upsilon + 1), overflow-safe.
double equilibrium_f(double x, double upsilon);

// C[f]/E of the relaxation model at physical momentum p:
// M (f_eq(p/T_eq(t); upsilon_target) - f_value).
double relaxation_collision(double p, double t, double f_value,
                            const ScenarioConfig& cfg);

// Exact solution in comoving coordinates y = a(t) p:
// f(y,t) = int_0^t M e^{M(s-t)} f_eq(y/(a T_eq)(s)) ds + e^{-Mt} f_eq(y; 1).
// The inner integral uses the adaptive engine at s_tol.
double exact_solution_y(double y, double t, const ScenarioConfig& cfg,
                        double s_tol = 1e-12);

// Same in the non-equilibrium method's coordinate z = p/T(t), where T_of_t is
// the solver's effective temperature: y = a(t) T_of_t z.
double exact_solution(double z, double t, double T_of_t,
                      const ScenarioConfig& cfg, double s_tol = 1e-12);

// Named presets from the validation study: reheating-r{1.1,1.4,2.0} and
// attractor-u{1.5,0.9,0.75,0.5}.
ScenarioConfig scenario_preset(std::string_view name);
std::vector<std::string> scenario_preset_names();

}  // namespace specboltz
