// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "specboltz/basis.hpp"
#include "specboltz/model_problem.hpp"
#include "specboltz/ode.hpp"

namespace specboltz {

// Chemical non-equilibrium method: f = f_Ups(z) (1 + sum_{k>=2} b^k psihat_k)
// with T and Upsilon evolved so that b^0 psihat_0 = 1 and b^1 = 0 hold at all
// times.  b^0 is never stored; it is always derived as ||psi_0||(Upsilon).
enum class NoneqForm { TForm, EpsForm };

struct SpectralStateNE {
  double t = 0.0;
  double T = 1.0;
  double upsilon = 1.0;
  double eps = 0.0;            // T = (1+eps)/a in EpsForm
  std::vector<double> b;       // b^2 .. b^{n_modes-1} (empty for 2 modes)
  NoneqForm form = NoneqForm::TForm;
};

// Lower-triangular projection matrices of the linear part (row k, column i):
//   A^k_i = <kappa psihat_i, psihat_k>           for k > i
//   A^k_k = -3 - a_k^{k-1} beta_k                (integration by parts)
//   B^k_i = <phi psihat_i, psihat_k>             for k > i
//   B^k_k = -Ups <psihat_k, d_Ups psihat_k>
// Entries above the diagonal are structurally zero.
struct MatrixSetNE {
  int n = 0;
  std::vector<double> A;  // row-major n x n
  std::vector<double> B;
  double dip_11 = 0.0;

  double a(int k, int i) const { return A[std::size_t(k) * n + i]; }
  double b(int k, int i) const { return B[std::size_t(k) * n + i]; }
};

std::vector<double> assemble_A(const BasisTable& basis);
std::vector<double> assemble_B(const BasisTable& basis);
MatrixSetNE assemble_matrices(const BasisTable& basis);

// Full coefficient vector (b^0 = ||psi_0||, b^1 = 0, then the free modes).
std::vector<double> full_b(const BasisTable& basis, std::span<const double> b_free);

// Collision projections c_k = <C[f]/(f_Ups E), psihat_k> for the relaxation
// model: c_k = M (int f_eq(z T/T_eq; Ups_target) psihat_k z^2 dz - b^k).
std::vector<double> collision_projections(double t, double T,
                                          std::span<const double> b_all,
                                          const BasisTable& basis,
                                          const ScenarioConfig& cfg);

double determinant_K(const MatrixSetNE& m, std::span<const double> b_all,
                     const BasisTable& basis);

struct RatesNE {
  double ups_rate = 0.0;  // dUps/dt / Ups
  double T_rate = 0.0;    // dT/dt / T (TForm)
  double eps_dot = 0.0;   // (EpsForm)
  double K = 0.0;
  std::vector<double> b_dot;  // k = 2 .. n_modes-1
};

// Constrained projected dynamics; H is the dilution rate.  Throws SingularK
// when |K| < 1e-12 ||A|| ||B||.
RatesNE rates(const MatrixSetNE& m, std::span<const double> b_all,
              std::span<const double> c, double H, const BasisTable& basis);
// Same trajectory in the eps variable: eps_dot = (1+eps)[(Bb)^1 ups_rate - c_1]/(Ab)^1.
RatesNE rates_eps(const MatrixSetNE& m, std::span<const double> b_all,
                  std::span<const double> c, double H, double eps,
                  const BasisTable& basis);

// n = g_p T^3/(2 pi^2) <1,1>,  rho = g_p T^4/(2 pi^2) <1,z>; exact for every
// state by the b^0, b^1 constraints, independent of the higher modes.
Moments moments_ne(double T, double g_p, const BasisTable& basis);

double reconstruct_f(const SpectralStateNE& state, const BasisTable& basis, double z);

struct NoneqSample {
  double t, T, upsilon, eps;
  std::vector<double> b;  // b^2..
  double n, rho, K;
};

struct NoneqRun {
  ScenarioConfig cfg;
  int n_modes = 0;
  std::vector<NoneqSample> samples;
  StepStats stats;
  bool switched = false;
  double switch_time = 0.0;
  double switch_threshold = 0.0;
};

// Rebuilds the Upsilon-dependent tables on demand and provides the two ODE
// right-hand sides.  One instance serves one trajectory (not thread-safe);
// independent trajectories use independent solvers.
class NoneqSolver {
 public:
  NoneqSolver(const ScenarioConfig& cfg, int n_modes);

  const BasisTable& table_at(double upsilon);
  const MatrixSetNE& matrices_at(double upsilon);

  std::vector<double> projections(double t, double T, double upsilon,
                                  std::span<const double> b_free);
  double collision_monitor(double t, double T, double upsilon,
                           std::span<const double> b_free);

  void rhs_tform(double t, std::span<const double> y, std::span<double> dy);
  void rhs_epsform(double t, std::span<const double> y, std::span<double> dy);

  NoneqRun run();
  NoneqRun run(std::span<const double> sample_times);

  int n_modes() const { return n_modes_; }
  const ScenarioConfig& config() const { return cfg_; }

 private:
  ScenarioConfig cfg_;
  int n_modes_;
  BasisOptions basis_opt_;
  double cached_upsilon_ = -1.0;
  std::unique_ptr<BasisTable> table_;
  std::unique_ptr<MatrixSetNE> matrices_;
};

NoneqRun run_noneq(const ScenarioConfig& cfg, int n_modes);

}  // namespace specboltz
