// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#include "specboltz/harness.hpp"

#include <cmath>
#include <cstdio>

namespace specboltz {

std::string run_id(Method method, const ScenarioConfig& cfg, int n_modes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_N%02d", n_modes);
  return method_name(method) + "_" + cfg.name + buf;
}

RunResult run_scenario(const ScenarioConfig& cfg, Method method, int n_modes,
                       Execution exec) {
  RunResult r;
  r.method = method;
  r.cfg = cfg;
  r.n_modes = n_modes;
  r.id = run_id(method, cfg, n_modes);
  if (method == Method::NonEq) {
    r.noneq = run_noneq(cfg, n_modes);
    r.series = evaluate_series(*r.noneq, exec);
  } else {
    r.chemeq = run_chemeq(cfg, n_modes);
    r.series = evaluate_series(*r.chemeq, exec);
  }
  r.report = summarize(method, cfg.name, n_modes, r.series);
  return r;
}

std::vector<RunResult> sweep(const ScenarioConfig& cfg, Method method,
                             std::span<const int> mode_counts, Execution exec) {
  std::vector<RunResult> out;
  out.reserve(mode_counts.size());
  for (int n : mode_counts) {
    try {
      out.push_back(run_scenario(cfg, method, n, exec));
    } catch (const SolverError& e) {
      RunResult r;
      r.method = method;
      r.cfg = cfg;
      r.n_modes = n;
      r.id = run_id(method, cfg, n);
      r.report.method = method;
      r.report.scenario = cfg.name;
      r.report.n_modes = n;
      r.report.failed = true;
      r.report.diagnostic = e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

// target distribution in comoving coordinates, f(y) = 1/(Ups^{-1} e^{y/R} + 1)
double target_f(double y, double upsilon, double R) {
  return equilibrium_f(y / R, upsilon);
}

BasisStudyEntry study_entry(double upsilon, double R, int n_max) {
  BasisStudyEntry e;
  e.upsilon = upsilon;
  e.R = R;
  e.divergent = !chemeq_membership(R).convergent;

  QuadratureOptions q;
  q.rel_tol = 1e-12;
  q.abs_tol = 1e-14;
  q.decay_rate = 0.9 / std::max(R, 1.0);
  q.poly_degree = n_max + 4;

  auto f = [&](double y) { return target_f(y, upsilon, R); };

  const double f_l1 = integrate_semi_infinite(f, q).value;

  for (WeightKind kind : {WeightKind::ChemEq, WeightKind::Exponential}) {
    WeightFamily w = (kind == WeightKind::ChemEq) ? WeightFamily::chem_eq()
                                                  : WeightFamily::exponential();
    const BasisTable table = build_basis(w, n_max);

    // c_k = <f/w, chihat_k>_w = int f chihat_k dy
    std::vector<double> c(n_max), vals(n_max);
    for (int k = 0; k < n_max; ++k)
      c[k] = integrate_semi_infinite(
                 [&](double y) {
                   table.eval_polys(y, vals);
                   return f(y) * vals[k];
                 },
                 q)
                 .value;

    std::vector<double> errs(n_max);
    for (int N = 1; N <= n_max; ++N) {
      const double num =
          integrate_semi_infinite(
              [&](double y) {
                table.eval_polys(y, vals);
                double part = 0.0;
                for (int k = 0; k < N; ++k) part += c[k] * vals[k];
                return std::abs(f(y) - w.w(y) * part);
              },
              q)
              .value;
      errs[N - 1] = num / f_l1;
    }

    std::vector<double> coeffs;
    if (!e.divergent) {
      // ||f||^2 = int f^2 / w dy; tail rate 2/R - 1 (>0 here)
      QuadratureOptions qn = q;
      qn.decay_rate = 0.9 * (2.0 / R - 1.0);
      const double norm = std::sqrt(
          integrate_semi_infinite([&](double y) { return f(y) * f(y) / w.w(y); }, qn)
              .value);
      coeffs.resize(n_max);
      for (int k = 0; k < n_max; ++k) coeffs[k] = std::abs(c[k]) / norm;
    }

    if (kind == WeightKind::ChemEq) {
      e.err_chemeq = std::move(errs);
      e.coeff_chemeq = std::move(coeffs);
    } else {
      e.err_laguerre = std::move(errs);
      e.coeff_laguerre = std::move(coeffs);
    }
  }
  return e;
}

}  // namespace

std::vector<BasisStudyEntry> basis_study(std::span<const double> upsilons,
                                         std::span<const double> reheat_ratios,
                                         int n_max, Execution exec) {
  std::vector<std::pair<double, double>> grid;
  for (double u : upsilons)
    for (double R : reheat_ratios) grid.emplace_back(u, R);
  std::vector<BasisStudyEntry> out(grid.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(grid.size()); ++i)
      out[i] = study_entry(grid[i].first, grid[i].second, n_max);
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i)
      out[i] = study_entry(grid[i].first, grid[i].second, n_max);
  }
  return out;
}

}  // namespace specboltz
