// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "specboltz/errors.hpp"

namespace specboltz {

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  long evaluations = 0;
};

// Tolerances plus the tail model |g(z)| <= C z^deg e^{-decay_rate z} used to
// place the truncation point of semi-infinite integrals.  The defaults cover
// every integrand in this code base: nothing here decays slower than
// e^{-z/2} (chemical-equilibrium comparison integrands just below R = 2).
struct QuadratureOptions {
  double rel_tol = 1e-13;
  double abs_tol = 1e-15;
  double decay_rate = 0.5;
  int poly_degree = 24;
  int max_panels = 20000;
};

// Smallest z such that int_z^inf s^deg e^{-decay_rate s} ds <= abs_tol.
double tail_cutoff(double decay_rate, int poly_degree, double abs_tol);

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7,15) panels over [lo, hi].  The embedded 7-point
// Gauss value provides the per-panel error estimate; the worst panel is
// bisected until sum(err) <= max(rel_tol*|value|, abs_tol).
IntegralResult integrate_finite(const Integrand& g, double lo, double hi,
                                const QuadratureOptions& opt = {});

// Truncate [0, inf) at tail_cutoff(...) and integrate the remainder
// adaptively.  Throws NonFiniteIntegrand on any NaN/inf sample and
// NonConvergence when the panel budget runs out.
IntegralResult integrate_semi_infinite(const Integrand& g,
                                       const QuadratureOptions& opt = {});

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]
// (Newton iteration on the Legendre recurrence).
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Fixed composite Gauss-Legendre grid on [0, z_max].  Basis construction and
// the solver right-hand sides evaluate all their inner products as dot
// products against one of these.
struct CompositeGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double z_max = 0.0;

  static CompositeGrid build(double z_max, int panels, int order);
  std::size_t size() const { return nodes.size(); }
};

}  // namespace specboltz
