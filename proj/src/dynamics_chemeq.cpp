// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#include "specboltz/dynamics_chemeq.hpp"

#include <algorithm>
#include <cmath>

namespace specboltz {

namespace {
constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;
}

ChemeqSolver::ChemeqSolver(const ScenarioConfig& cfg, int n_modes)
    : cfg_(cfg), n_modes_(n_modes) {
  cfg_.validate();
  if (n_modes_ < 1) throw ConfigError("chemical-equilibrium method needs >= 1 mode");

  // The attractor integrand decays like e^{-y/(a T_eq)} with a T_eq <= R.
  BasisOptions bopt;
  bopt.z_max = tail_cutoff(std::min(1.0, 0.9 / std::max(cfg_.R, 1.0)),
                           2 * n_modes_ + 8, 1e-20);
  basis_ = build_basis(WeightFamily::chem_eq(), n_modes_, bopt);

  QuadratureOptions q;
  q.rel_tol = 1e-13;
  q.abs_tol = 1e-16;
  q.decay_rate = basis_.weight.decay_rate();
  q.poly_degree = n_modes_ + 4;
  std::vector<double> vals(n_modes_);
  w2_.resize(n_modes_);
  w3_.resize(n_modes_);
  for (int i = 0; i < n_modes_; ++i) {
    w2_[i] = integrate_semi_infinite(
                 [&](double y) {
                   basis_.eval_polys(y, vals);
                   return basis_.weight.w(y) * vals[i] * y * y;
                 },
                 q)
                 .value;
    w3_[i] = integrate_semi_infinite(
                 [&](double y) {
                   basis_.eval_polys(y, vals);
                   return basis_.weight.w(y) * vals[i] * y * y * y;
                 },
                 q)
                 .value;
  }
}

void ChemeqSolver::rhs(double t, std::span<const double> d,
                       std::span<double> dd) const {
  if (cfg_.M == 0.0) {
    std::fill(dd.begin(), dd.end(), 0.0);
    return;
  }
  const Background bg = background(t, cfg_);
  const double aTeq = bg.a * bg.T_eq;
  const std::size_t G = basis_.grid_size();
  for (int k = 0; k < n_modes_; ++k) {
    const double* pk = basis_.psi_row(k);
    double s = 0.0;
    for (std::size_t g = 0; g < G; ++g)
      s += equilibrium_f(basis_.grid_z[g] / aTeq, cfg_.upsilon_target) * pk[g] *
           basis_.grid_gl[g];
    dd[k] = cfg_.M * (s - d[k]);
  }
}

Moments ChemeqSolver::moments(std::span<const double> d, double a) const {
  // the sums truncate: chihat_k is orthogonal to polynomials of degree < k
  Moments mo;
  const double a3 = a * a * a;
  for (int i = 0; i < std::min(n_modes_, 3); ++i) mo.n += d[i] * w2_[i];
  for (int i = 0; i < std::min(n_modes_, 4); ++i) mo.rho += d[i] * w3_[i];
  mo.n *= cfg_.g_p / (kTwoPiSq * a3);
  mo.rho *= cfg_.g_p / (kTwoPiSq * a3 * a);
  return mo;
}

double ChemeqSolver::reconstruct_f(std::span<const double> d, double y) const {
  const auto vals = basis_.eval_polys(y);
  double chi = 0.0;
  for (int i = 0; i < n_modes_; ++i) chi += d[i] * vals[i];
  return basis_.weight.w(y) * chi;  // w = f_ch
}

ChemeqRun ChemeqSolver::run() const {
  std::vector<double> ts(cfg_.sample_count);
  for (int i = 0; i < cfg_.sample_count; ++i)
    ts[i] = cfg_.t_final * i / double(cfg_.sample_count - 1);
  return run(ts);
}

ChemeqRun ChemeqSolver::run(std::span<const double> sample_times) const {
  ChemeqRun out;
  out.cfg = cfg_;
  out.n_modes = n_modes_;

  IntegratorConfig icfg;
  icfg.rel_tol = cfg_.ode_rel_tol;
  icfg.abs_tol = cfg_.ode_abs_tol;

  // f(p, 0) = f_ch exactly: chi = 1, i.e. d^0 = ||chi_0|| = sqrt(ln 2)
  std::vector<double> d0(n_modes_, 0.0);
  d0[0] = basis_.norms[0];

  OdeRhs f = [this](double t, std::span<const double> y, std::span<double> dy) {
    rhs(t, y, dy);
  };
  OdeSolution s = integrate_ode(f, d0, 0.0, cfg_.t_final, sample_times, icfg);
  out.stats = s.stats;
  for (std::size_t i = 0; i < s.sample_times.size(); ++i) {
    ChemeqSample row;
    row.t = s.sample_times[i];
    row.d = s.samples[i];
    const Moments mo = moments(row.d, background(row.t, cfg_).a);
    row.n = mo.n;
    row.rho = mo.rho;
    out.samples.push_back(std::move(row));
  }
  return out;
}

ChemeqRun run_chemeq(const ScenarioConfig& cfg, int n_modes) {
  return ChemeqSolver(cfg, n_modes).run();
}

}  // namespace specboltz
