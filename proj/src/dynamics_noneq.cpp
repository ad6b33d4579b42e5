// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#include "specboltz/dynamics_noneq.hpp"

#include <algorithm>
#include <cmath>

namespace specboltz {

namespace {

constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;

void require_noneq(const BasisTable& basis) {
  if (basis.weight.kind != WeightKind::NonEqFugacity)
    throw ConfigError("operation requires a NonEqFugacity basis");
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> assemble_A(const BasisTable& basis) {
  require_noneq(basis);
  const int n = basis.n_modes;
  const std::size_t G = basis.grid_size();
  std::vector<double> kw(G);  // kappa(z) w(z) gl_weight
  for (std::size_t i = 0; i < G; ++i)
    kw[i] = basis.weight.kinetic_factor(basis.grid_z[i]) * basis.grid_w[i] *
            basis.grid_gl[i];
  std::vector<double> A(std::size_t(n) * n, 0.0);
  for (int k = 0; k < n; ++k) {
    // diagonal from integration by parts: <z psihat_k', psihat_k> = a_k^{k-1} beta_k
    A[std::size_t(k) * n + k] =
        -3.0 - (k >= 1 ? basis.deriv_coeffs[k][k - 1] * basis.beta[k] : 0.0);
    const double* pk = basis.psi_row(k);
    for (int i = 0; i < k; ++i) {
      const double* pi = basis.psi_row(i);
      double s = 0.0;
      for (std::size_t g = 0; g < G; ++g) s += pi[g] * pk[g] * kw[g];
      A[std::size_t(k) * n + i] = s;
    }
  }
  return A;
}

std::vector<double> assemble_B(const BasisTable& basis) {
  require_noneq(basis);
  const int n = basis.n_modes;
  const std::size_t G = basis.grid_size();
  std::vector<double> fw(G);  // phi(z) w(z) gl_weight
  for (std::size_t i = 0; i < G; ++i)
    fw[i] = basis.weight.fugacity_factor(basis.grid_z[i]) * basis.grid_w[i] *
            basis.grid_gl[i];
  std::vector<double> B(std::size_t(n) * n, 0.0);
  for (int k = 0; k < n; ++k) {
    B[std::size_t(k) * n + k] = -basis.weight.upsilon * basis.upsilon_diag[k];
    const double* pk = basis.psi_row(k);
    for (int i = 0; i < k; ++i) {
      const double* pi = basis.psi_row(i);
      double s = 0.0;
      for (std::size_t g = 0; g < G; ++g) s += pi[g] * pk[g] * fw[g];
      B[std::size_t(k) * n + i] = s;
    }
  }
  return B;
}

MatrixSetNE assemble_matrices(const BasisTable& basis) {
  MatrixSetNE m;
  m.n = basis.n_modes;
  m.A = assemble_A(basis);
  m.B = assemble_B(basis);
  m.dip_11 = basis.dip_11;
  return m;
}

std::vector<double> full_b(const BasisTable& basis, std::span<const double> b_free) {
  std::vector<double> b(basis.n_modes, 0.0);
  b[0] = basis.norms[0];  // = sqrt(<1,1>); b^1 stays 0
  for (std::size_t i = 0; i < b_free.size() && int(i) + 2 < basis.n_modes; ++i)
    b[i + 2] = b_free[i];
  return b;
}

std::vector<double> collision_projections(double t, double T,
                                          std::span<const double> b_all,
                                          const BasisTable& basis,
                                          const ScenarioConfig& cfg) {
  const int n = basis.n_modes;
  std::vector<double> c(n, 0.0);
  if (cfg.M == 0.0) return c;
  const Background bg = background(t, cfg);
  const double ratio = T / bg.T_eq;
  const std::size_t G = basis.grid_size();
  std::vector<double> fz(G);
  for (std::size_t g = 0; g < G; ++g) {
    const double z = basis.grid_z[g];
    fz[g] = equilibrium_f(z * ratio, cfg.upsilon_target) * z * z * basis.grid_gl[g];
  }
  for (int k = 0; k < n; ++k) {
    const double* pk = basis.psi_row(k);
    double s = 0.0;
    for (std::size_t g = 0; g < G; ++g) s += pk[g] * fz[g];
    c[k] = cfg.M * (s - b_all[k]);
  }
  return c;
}

double determinant_K(const MatrixSetNE& m, std::span<const double> b_all,
                     const BasisTable& basis) {
  const int n = m.n;
  double Ab0 = 0.0, Ab1 = 0.0, Bb0 = 0.0, Bb1 = 0.0;
  for (int j = 0; j < n; ++j) {
    Ab0 += m.a(0, j) * b_all[j];
    Bb0 += m.b(0, j) * b_all[j];
    if (n > 1) {
      Ab1 += m.a(1, j) * b_all[j];
      Bb1 += m.b(1, j) * b_all[j];
    }
  }
  const double gamma = basis.weight.upsilon * m.dip_11 / (2.0 * basis.norms[0]);
  return (gamma + Bb0) * Ab1 - Ab0 * Bb1;
}

namespace {

RatesNE rates_impl(const MatrixSetNE& m, std::span<const double> b_all,
                   std::span<const double> c, double H, const BasisTable& basis,
                   bool eps_form, double eps) {
  const int n = m.n;
  std::vector<double> Ab(n, 0.0), Bb(n, 0.0);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j <= k; ++j) {  // lower triangular
      Ab[k] += m.a(k, j) * b_all[j];
      Bb[k] += m.b(k, j) * b_all[j];
    }

  RatesNE r;
  const double gamma = basis.weight.upsilon * m.dip_11 / (2.0 * basis.norms[0]);
  r.K = (gamma + Bb[0]) * Ab[1] - Ab[0] * Bb[1];
  const double scale = max_abs(m.A) * max_abs(m.B);
  if (std::abs(r.K) < 1e-12 * scale)
    throw SingularK("projection denominator K = " + std::to_string(r.K) +
                    " below threshold");

  r.ups_rate = (Ab[1] * c[0] - Ab[0] * c[1]) / r.K;
  // bracket = H + Tdot/T, shared by both forms
  const double bracket = (Bb[1] * r.ups_rate - c[1]) / Ab[1];
  r.T_rate = bracket - H;
  r.eps_dot = eps_form ? (1.0 + eps) * bracket : 0.0;
  r.b_dot.assign(std::max(n - 2, 0), 0.0);
  for (int k = 2; k < n; ++k)
    r.b_dot[k - 2] = bracket * Ab[k] - r.ups_rate * Bb[k] + c[k];
  return r;
}

}  // namespace

RatesNE rates(const MatrixSetNE& m, std::span<const double> b_all,
              std::span<const double> c, double H, const BasisTable& basis) {
  return rates_impl(m, b_all, c, H, basis, false, 0.0);
}

RatesNE rates_eps(const MatrixSetNE& m, std::span<const double> b_all,
                  std::span<const double> c, double H, double eps,
                  const BasisTable& basis) {
  return rates_impl(m, b_all, c, H, basis, true, eps);
}

Moments moments_ne(double T, double g_p, const BasisTable& basis) {
  Moments mo;
  mo.n = g_p * T * T * T / kTwoPiSq * basis.ip_11;
  mo.rho = g_p * T * T * T * T / kTwoPiSq * basis.ip_1z;
  return mo;
}

double reconstruct_f(const SpectralStateNE& state, const BasisTable& basis,
                     double z) {
  // b^0 psihat_0 = 1 identically, b^1 = 0
  double psi = 1.0;
  if (!state.b.empty()) {
    const auto vals = basis.eval_polys(z);
    for (std::size_t i = 0; i < state.b.size() && int(i) + 2 < basis.n_modes; ++i)
      psi += state.b[i] * vals[i + 2];
  }
  return basis.weight.f_upsilon(z) * psi;
}

NoneqSolver::NoneqSolver(const ScenarioConfig& cfg, int n_modes)
    : cfg_(cfg), n_modes_(n_modes) {
  cfg_.validate();
  if (n_modes_ < 2) throw ConfigError("non-equilibrium method needs >= 2 modes");
  // The collision integrand decays like e^{-z T/T_eq} with T/T_eq >= ~1/R;
  // size the shared grid for the slowest tail in the run.
  const double decay = std::min(1.0, 0.9 / std::max(cfg_.R, 1.0));
  basis_opt_.z_max = tail_cutoff(decay, 2 * n_modes_ + 8, 1e-20);
}

const BasisTable& NoneqSolver::table_at(double upsilon) {
  if (!(upsilon > 0.0))
    throw RhsFailure("fugacity left the positive domain: " + std::to_string(upsilon));
  const bool stale =
      !table_ || (cfg_.refresh_delta_upsilon > 0.0
                      ? std::abs(upsilon - cached_upsilon_) > cfg_.refresh_delta_upsilon
                      : upsilon != cached_upsilon_);
  if (stale) {
    table_ = std::make_unique<BasisTable>(
        build_basis(WeightFamily::noneq(upsilon), n_modes_, basis_opt_));
    matrices_.reset();
    cached_upsilon_ = upsilon;
  }
  return *table_;
}

const MatrixSetNE& NoneqSolver::matrices_at(double upsilon) {
  const BasisTable& t = table_at(upsilon);
  if (!matrices_) matrices_ = std::make_unique<MatrixSetNE>(assemble_matrices(t));
  return *matrices_;
}

std::vector<double> NoneqSolver::projections(double t, double T, double upsilon,
                                             std::span<const double> b_free) {
  const BasisTable& tab = table_at(upsilon);
  return collision_projections(t, T, full_b(tab, b_free), tab, cfg_);
}

double NoneqSolver::collision_monitor(double t, double T, double upsilon,
                                      std::span<const double> b_free) {
  return max_abs(projections(t, T, upsilon, b_free));
}

void NoneqSolver::rhs_tform(double t, std::span<const double> y,
                            std::span<double> dy) {
  const double T = y[0], ups = y[1];
  if (!(T > 0.0)) throw RhsFailure("effective temperature left the positive domain");
  const BasisTable& tab = table_at(ups);
  const MatrixSetNE& m = matrices_at(ups);
  const auto b = full_b(tab, y.subspan(2));
  const auto c = collision_projections(t, T, b, tab, cfg_);
  const RatesNE r = rates(m, b, c, background(t, cfg_).H, tab);
  dy[0] = r.T_rate * T;
  dy[1] = r.ups_rate * ups;
  for (std::size_t i = 0; i + 2 < y.size(); ++i) dy[i + 2] = r.b_dot[i];
}

void NoneqSolver::rhs_epsform(double t, std::span<const double> y,
                              std::span<double> dy) {
  const double eps = y[0], ups = y[1];
  const Background bg = background(t, cfg_);
  const double T = (1.0 + eps) / bg.a;
  if (!(T > 0.0)) throw RhsFailure("effective temperature left the positive domain");
  const BasisTable& tab = table_at(ups);
  const MatrixSetNE& m = matrices_at(ups);
  const auto b = full_b(tab, y.subspan(2));
  const auto c = collision_projections(t, T, b, tab, cfg_);
  const RatesNE r = rates_eps(m, b, c, bg.H, eps, tab);
  dy[0] = r.eps_dot;
  dy[1] = r.ups_rate * ups;
  for (std::size_t i = 0; i + 2 < y.size(); ++i) dy[i + 2] = r.b_dot[i];
}

NoneqRun NoneqSolver::run() {
  std::vector<double> ts(cfg_.sample_count);
  for (int i = 0; i < cfg_.sample_count; ++i)
    ts[i] = cfg_.t_final * i / double(cfg_.sample_count - 1);
  return run(ts);
}

NoneqRun NoneqSolver::run(std::span<const double> sample_times) {
  NoneqRun out;
  out.cfg = cfg_;
  out.n_modes = n_modes_;

  IntegratorConfig icfg;
  icfg.rel_tol = cfg_.ode_rel_tol;
  icfg.abs_tol = cfg_.ode_abs_tol;

  const int nb = n_modes_ - 2;
  std::vector<double> y0(2 + nb, 0.0);
  y0[0] = 1.0;  // T(0): f(p,0) is Fermi-Dirac at temperature T_eq(0) = 1
  y0[1] = 1.0;  // Upsilon(0)

  out.switch_threshold =
      cfg_.switch_threshold_factor * collision_monitor(0.0, y0[0], y0[1], {});

  auto store = [&](double t, std::span<const double> y, bool eps_form) {
    NoneqSample s;
    s.t = t;
    const Background bg = background(t, cfg_);
    if (eps_form) {
      s.eps = y[0];
      s.T = (1.0 + s.eps) / bg.a;
    } else {
      s.T = y[0];
      s.eps = bg.a * s.T - 1.0;
    }
    s.upsilon = y[1];
    s.b.assign(y.begin() + 2, y.end());
    const BasisTable& tab = table_at(s.upsilon);
    const Moments mo = moments_ne(s.T, cfg_.g_p, tab);
    s.n = mo.n;
    s.rho = mo.rho;
    s.K = determinant_K(matrices_at(s.upsilon), full_b(tab, s.b), tab);
    out.samples.push_back(std::move(s));
  };

  const bool immediate_switch =
      collision_monitor(0.0, y0[0], y0[1], {}) <= out.switch_threshold;

  double t_phase = 0.0;
  std::vector<double> y_phase = y0;
  if (immediate_switch) {
    out.switched = true;
    out.switch_time = 0.0;
  } else {
    OdeRhs rhs = [this](double t, std::span<const double> y, std::span<double> dy) {
      rhs_tform(t, y, dy);
    };
    const double thr = out.switch_threshold;
    StopCondition stop = [this, thr](double t, std::span<const double> y) {
      return collision_monitor(t, y[0], y[1], y.subspan(2)) <= thr;
    };
    OdeSolution p1 = integrate_ode(rhs, y0, 0.0, cfg_.t_final, sample_times, icfg, stop);
    for (std::size_t i = 0; i < p1.sample_times.size(); ++i)
      store(p1.sample_times[i], p1.samples[i], false);
    out.stats = p1.stats;
    t_phase = p1.t_end;
    y_phase = p1.y_end;
    if (p1.stopped_early) {
      out.switched = true;
      out.switch_time = t_phase;
    }
  }

  if (out.switched) {
    // map exactly: eps = a T - 1
    y_phase[0] = background(t_phase, cfg_).a * y_phase[0] - 1.0;
    OdeRhs rhs = [this](double t, std::span<const double> y, std::span<double> dy) {
      rhs_epsform(t, y, dy);
    };
    std::vector<double> rest;
    for (double tv : sample_times)
      if (tv >= t_phase && (out.samples.empty() || tv > out.samples.back().t))
        rest.push_back(tv);
    OdeSolution p2 = integrate_ode(rhs, y_phase, t_phase, cfg_.t_final, rest, icfg);
    for (std::size_t i = 0; i < p2.sample_times.size(); ++i)
      store(p2.sample_times[i], p2.samples[i], true);
    out.stats.accepted += p2.stats.accepted;
    out.stats.rejected += p2.stats.rejected;
    out.stats.rhs_evals += p2.stats.rhs_evals;
  }
  return out;
}

NoneqRun run_noneq(const ScenarioConfig& cfg, int n_modes) {
  NoneqSolver solver(cfg, n_modes);
  return solver.run();
}

}  // namespace specboltz
