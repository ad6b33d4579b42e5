// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "specboltz/errors.hpp"

namespace specboltz {

struct IntegratorConfig {
  double rel_tol = 1e-13;
  double abs_tol = 1e-13;
  double max_step = 0.0;      // 0 = unrestricted
  double initial_step = 0.0;  // 0 = automatic
  long max_steps = 5'000'000;
};

struct StepStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
};

using OdeRhs =
    std::function<void(double t, std::span<const double> y, std::span<double> dy)>;

// Called at the end of each accepted step; returning true stops the
// integration there (used for the TForm -> EpsForm switch).
using StopCondition = std::function<bool(double t, std::span<const double> y)>;

struct OdeSolution {
  // States interpolated at the requested sample times (those <= t_end).
  std::vector<double> sample_times;
  std::vector<std::vector<double>> samples;
  double t_end = 0.0;
  std::vector<double> y_end;
  bool stopped_early = false;  // stop condition fired before t1
  StepStats stats;
};

// Dormand-Prince 5(4) embedded pair with its 4th-order dense interpolant.
// sample_times must be ascending and within [t0, t1].  Deterministic: the
// step sequence depends only on the inputs.
OdeSolution integrate_ode(const OdeRhs& rhs, std::span<const double> y0,
                          double t0, double t1,
                          std::span<const double> sample_times,
                          const IntegratorConfig& cfg,
                          const StopCondition& stop = nullptr);

}  // namespace specboltz
