// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "specboltz/quadrature.hpp"

namespace specboltz {

// Weight functions on [0, inf) that generate the orthonormal families.
//   ChemEq:        w(y) = 1/(e^y + 1)            fixed basis, y = a p
//   NonEqFugacity: w(z) = z^2/(Ups^{-1} e^z + 1) parametrized by Upsilon, z = p/T
//   LaguerreType:  w(z) = z^2 e^{-z}             Ups -> 0 limit of the above
//   Exponential:   w(y) = e^{-y}                 classical Laguerre, used only
//                                                by the basis comparison study
enum class WeightKind { ChemEq, NonEqFugacity, LaguerreType, Exponential };

struct WeightFamily {
  WeightKind kind = WeightKind::ChemEq;
  double upsilon = 1.0;  // meaningful for NonEqFugacity only

  static WeightFamily chem_eq() { return {WeightKind::ChemEq, 1.0}; }
  static WeightFamily noneq(double upsilon);
  static WeightFamily laguerre_type() { return {WeightKind::LaguerreType, 1.0}; }
  static WeightFamily exponential() { return {WeightKind::Exponential, 1.0}; }

  // Kinetic equilibrium distribution 1/(Ups^{-1} e^z + 1), evaluated in the
  // overflow-safe form Ups e^{-z}/(1 + Ups e^{-z}).
  double f_upsilon(double z) const;

  double w(double z) const;
  // d/dUps of the NonEqFugacity weight: z^2 e^{-z}/(1 + Ups e^{-z})^2,
  // equal to z^2/(e^{z/2} + Ups e^{-z/2})^2.
  double dw_dupsilon(double z) const;
  // kappa(z) = (z/f_Ups) d_z f_Ups = -z/(1 + Ups e^{-z})
  double kinetic_factor(double z) const;
  // phi(z) = (Ups/f_Ups) d_Ups f_Ups = 1/(1 + Ups e^{-z})
  double fugacity_factor(double z) const;

  // Exponential tail rate of w (all supported weights decay like e^{-z}).
  double decay_rate() const { return 1.0; }
};

struct BasisOptions {
  double z_max = 0.0;      // 0 = derive from the weight's tail
  int grid_order = 20;     // Gauss-Legendre points per grid panel
  double panel_width = 2.5;
  double ortho_tol = 1e-10;  // re-verification threshold (mandatory)
  bool verify = true;
};

// Recurrence data for one orthonormal family at a fixed parameter value,
// provided by the Stieltjes procedure.  Immutable once built; the dynamics
// rebuilds a table whenever Upsilon moves.
//
// Conventions: psi_n is the monic polynomial, psihat_n = psi_n/||psi_n||,
//   alpha[n] = <z psihat_n, psihat_n>,  beta[n] = <z psihat_n, psihat_{n-1}>
// and the recurrence reads
//   psihat_{n+1} = [(z - alpha[n]) psihat_n - beta[n] psihat_{n-1}] / beta[n+1].
struct BasisTable {
  WeightFamily weight;
  int n_modes = 0;  // psihat_0 .. psihat_{n_modes-1}

  std::vector<double> alpha;
  std::vector<double> beta;   // beta[0] = 0 placeholder
  std::vector<double> norms;  // ||psi_n|| (monic norms); beta[n] = norms[n]/norms[n-1]

  // a[n][k]: psihat_n' = sum_{k<n} a[n][k] psihat_k (row n has n entries)
  std::vector<std::vector<double>> deriv_coeffs;

  // <psihat_n, d_Ups psihat_n> = -1/2 int psihat_n^2 d_Ups(w) dz
  // (NonEqFugacity only, empty otherwise)
  std::vector<double> upsilon_diag;

  double ip_11 = 0.0;    // <1,1>
  double ip_1z = 0.0;    // <1,z>
  double dip_11 = 0.0;   // d_Ups <1,1> (NonEqFugacity only)
  double ortho_residual = 0.0;  // from post-construction re-verification

  // Construction grid, kept so downstream matrix assembly and collision
  // projections run as dot products.
  std::vector<double> grid_z;
  std::vector<double> grid_gl;   // bare Gauss-Legendre weights
  std::vector<double> grid_w;    // w(z_i)
  std::vector<double> grid_psi;  // psihat values, row n at [n*size .. )

  std::size_t grid_size() const { return grid_z.size(); }
  const double* psi_row(int n) const { return grid_psi.data() + std::size_t(n) * grid_size(); }

  // psihat_0(z) .. psihat_{n_modes-1}(z) by the three-term recurrence.
  void eval_polys(double z, std::span<double> out) const;
  std::vector<double> eval_polys(double z) const;
  // Evaluate psihat_n'(z) through the a_n^k expansion.
  double eval_poly_deriv(int n, double z) const;
};

// Stieltjes procedure: recurrence coefficients from inner products against
// the weight, never from raw monomial moments.  Orthonormality is re-verified
// on an independently structured grid; residuals above ortho_tol throw
// LossOfOrthogonality.
BasisTable build_basis(const WeightFamily& weight, int n_modes,
                       const BasisOptions& opt = {});

// Recompute max_{i,j} |<psihat_i, psihat_j> - delta_ij| with the adaptive
// engine (independent of the construction grid).  Slow; used by tests.
double orthonormality_residual_adaptive(const BasisTable& table,
                                        const QuadratureOptions& opt = {});

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss rule of the table's weight via the Golub-Welsch eigenproblem on the
// symmetric tridiagonal Jacobi matrix.  Requires n_points <= table.n_modes.
GaussRule gauss_rule(const BasisTable& table, int n_points);

// Best-approximation coefficients c_k = <g, psihat_k> in L^2(w dz).
// decay_rate/poly_degree in opt describe g*w for the tail cutoff.
std::vector<double> expand_function(const BasisTable& table, const Integrand& g,
                                    int n_modes, const QuadratureOptions& opt = {});

// Hilbert-space membership of chi = f_Ups/f_ch against the ChemEq weight:
// the squared-norm integrand behaves like Ups^2 e^{y(1-2/R)} at large y,
// so the expansion lives in L^2(f_ch dy) only for R < 2.
struct MembershipDiagnostic {
  bool convergent = true;
  double tail_rate = 0.0;  // 2/R - 1; divergent when <= 0
};
MembershipDiagnostic chemeq_membership(double reheat_ratio);

// Debug dump of (alpha, beta, norms, a_n^k) as CSV.
std::string basis_debug_csv(const BasisTable& table);

}  // namespace specboltz
