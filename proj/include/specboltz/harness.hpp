// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specboltz/metrics.hpp"

namespace specboltz {

struct RunResult {
  Method method = Method::NonEq;
  ScenarioConfig cfg;
  int n_modes = 0;
  std::string id;  // "<method>_<scenario>_N<modes>", used in file names

  std::optional<NoneqRun> noneq;
  std::optional<ChemeqRun> chemeq;
  ErrorSeries series;
  ErrorReport report;
};

std::string run_id(Method method, const ScenarioConfig& cfg, int n_modes);

// Integrate one scenario with the chosen method and compare against the
// exact solution at the dense sample times.
RunResult run_scenario(const ScenarioConfig& cfg, Method method, int n_modes,
                       Execution exec = Execution::Parallel);

// One run per mode count.  Failures are recorded in the report (failed +
// diagnostic) instead of aborting the grid.
std::vector<RunResult> sweep(const ScenarioConfig& cfg, Method method,
                             std::span<const int> mode_counts,
                             Execution exec = Execution::Parallel);

// Static basis comparison: expand the kinetic-equilibrium target
// f(y) = 1/(Ups^{-1} e^{y/R} + 1) in the chemical-equilibrium basis and in
// the classical Laguerre basis (weight e^{-y}), recording truncation-error
// curves and normalized mode coefficients.  For R >= 2 the target leaves
// L^2(f_ch dy); the entry is flagged divergent and its normalized
// coefficients are omitted.
struct BasisStudyEntry {
  double upsilon = 1.0;
  double R = 1.0;
  bool divergent = false;
  std::vector<double> err_chemeq;    // error_N, N = 1..n_max
  std::vector<double> err_laguerre;
  std::vector<double> coeff_chemeq;  // |c_k|/||f||, k = 0..n_max-1
  std::vector<double> coeff_laguerre;
};

std::vector<BasisStudyEntry> basis_study(std::span<const double> upsilons,
                                         std::span<const double> reheat_ratios,
                                         int n_max,
                                         Execution exec = Execution::Parallel);

}  // namespace specboltz
