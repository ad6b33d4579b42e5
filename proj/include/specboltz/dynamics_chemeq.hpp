// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "specboltz/basis.hpp"
#include "specboltz/model_problem.hpp"
#include "specboltz/ode.hpp"

namespace specboltz {

// Baseline chemical-equilibrium method in comoving coordinates y = a p:
// f = f_ch(y) sum_i d^i chihat_i(y) on the fixed basis of the weight
// f_ch = 1/(e^y + 1).
struct SpectralStateCE {
  double t = 0.0;
  std::vector<double> d;  // d^0 .. d^{n_modes-1}
};

struct ChemeqSample {
  double t;
  std::vector<double> d;
  double n, rho;
};

struct ChemeqRun {
  ScenarioConfig cfg;
  int n_modes = 0;
  std::vector<ChemeqSample> samples;
  StepStats stats;
};

class ChemeqSolver {
 public:
  ChemeqSolver(const ScenarioConfig& cfg, int n_modes);

  const BasisTable& basis() const { return basis_; }
  // Moment weights int f_ch chihat_i y^m dy, m = 2, 3 (computed once to 1e-13).
  std::span<const double> moment_weights_n() const { return w2_; }
  std::span<const double> moment_weights_rho() const { return w3_; }

  // d/dt d^k = M (int f_eq(y/(a T_eq); Ups_target) chihat_k dy - d^k)
  void rhs(double t, std::span<const double> d, std::span<double> dd) const;

  Moments moments(std::span<const double> d, double a) const;
  double reconstruct_f(std::span<const double> d, double y) const;

  ChemeqRun run() const;
  ChemeqRun run(std::span<const double> sample_times) const;

  int n_modes() const { return n_modes_; }

 private:
  ScenarioConfig cfg_;
  int n_modes_;
  BasisTable basis_;
  std::vector<double> w2_, w3_;
};

ChemeqRun run_chemeq(const ScenarioConfig& cfg, int n_modes);

}  // namespace specboltz
