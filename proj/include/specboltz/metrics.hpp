// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "specboltz/dynamics_chemeq.hpp"
#include "specboltz/dynamics_noneq.hpp"

namespace specboltz {

// Every per-sample error evaluation is independent, so the series kernels
// run either as a plain loop (reference) or as an OpenMP parallel-for over
// sample indices.  Both paths produce bit-identical results; the benchmark
// target compares their throughput.
enum class Execution { Serial, Parallel };

enum class Method { ChemEq, NonEq };

std::string method_name(Method m);

struct ErrorSeries {
  std::vector<double> t;
  std::vector<double> l1;       // int |f - f^N| / int |f| at each sample
  std::vector<double> rel_n;    // |n^N/n - 1|
  std::vector<double> rel_rho;  // |rho^N/rho - 1|
  // |computed - exact| per mode coefficient, indexed [mode][sample]
  std::vector<std::vector<double>> mode_abs_err;
};

struct ErrorReport {
  Method method = Method::NonEq;
  std::string scenario;
  int n_modes = 0;
  double max_rel_n_err = 0.0;
  double max_rel_rho_err = 0.0;
  double max_l1_err = 0.0;
  double final_l1_err = 0.0;
  std::vector<double> mode_coeff_err;  // max over time, per mode
  bool failed = false;
  std::string diagnostic;
};

// Relative L1 distance int |f_num - f_exact| dmu / int |f_exact| dmu in the
// method's native coordinate; opt carries the tail model of the integrands.
double l1_error(const Integrand& f_num, const Integrand& f_exact,
                const QuadratureOptions& opt);

// Compare a trajectory with the exact solution at every stored sample:
// relative L1 error, relative moment errors, and the per-mode coefficient
// errors (exact coefficients by projecting the exact solution onto the same
// basis the solver used at that sample's Upsilon).
ErrorSeries evaluate_series(const NoneqRun& run, Execution exec);
ErrorSeries evaluate_series(const ChemeqRun& run, Execution exec);

ErrorReport summarize(Method method, const std::string& scenario, int n_modes,
                      const ErrorSeries& series);

}  // namespace specboltz
