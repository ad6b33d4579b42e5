// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end validation suite.  Each criterion prints one PASS/FAIL line;
// the exit code is the number of failures.  Heavy trajectories are solved
// once and shared across criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "specboltz/report_io.hpp"

using namespace specboltz;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- shared run cache ------------------------------------------------------

struct RunKey {
  std::string scenario;
  Method method;
  int n;
  bool operator<(const RunKey& o) const {
    return std::tie(scenario, method, n) < std::tie(o.scenario, o.method, o.n);
  }
};

class Suite {
 public:
  const RunResult& get(const std::string& scenario, Method m, int n) {
    const RunKey key{scenario, m, n};
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      std::fprintf(stderr, "  [solving %s %s N=%d]\n", scenario.c_str(),
                   method_name(m).c_str(), n);
      it = cache_
               .emplace(key, run_scenario(scenario_preset(scenario), m, n,
                                          Execution::Parallel))
               .first;
    }
    return it->second;
  }

 private:
  std::map<RunKey, RunResult> cache_;
};

Suite suite;

// ---- criteria --------------------------------------------------------------

// 1. basis correctness
Check criterion_basis() {
  Check c;
  const std::vector<double> upsilons{0.1, 0.5, 1.0, 1.5, 5.0};
  for (double u : upsilons) {
    const auto t = build_basis(WeightFamily::noneq(u), 10);
    const double r = orthonormality_residual_adaptive(t);
    c.require(r < 1e-12, "noneq orthonormality " + fmt(r) + " at Ups=" + fmt(u));
  }
  {
    const auto t = build_basis(WeightFamily::chem_eq(), 10);
    const double r = orthonormality_residual_adaptive(t);
    c.require(r < 1e-12, "chemeq orthonormality " + fmt(r));
  }

  const auto limit = build_basis(WeightFamily::noneq(1e-6), 3);
  c.require(std::abs(limit.alpha[0] - 3.0) < 1e-5,
            "Laguerre limit alpha0 = " + fmt(limit.alpha[0]));

  // derivative recursion vs central finite differences
  const auto t = build_basis(WeightFamily::noneq(1.0), 10);
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> zdist(0.05, 16.0);
  const double h = 1e-6;
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const double z = zdist(rng);
    const auto up = t.eval_polys(z + h);
    const auto dn = t.eval_polys(z - h);
    for (int n = 0; n < 10; ++n) {
      const double fd = (up[n] - dn[n]) / (2 * h);
      worst = std::max(worst, std::abs(t.eval_poly_deriv(n, z) - fd) /
                                  std::max(1.0, std::abs(fd)));
    }
  }
  c.require(worst < 1e-7, "derivative recursion error " + fmt(worst));

  // d_Ups diagonal identity vs finite differences across the family
  const double hu = 1e-6;
  const auto tp = build_basis(WeightFamily::noneq(1.0 + hu), 6);
  const auto t6 = build_basis(WeightFamily::noneq(1.0), 6);
  QuadratureOptions q;
  q.decay_rate = 1.0;
  q.poly_degree = 16;
  double worst_u = 0.0;
  for (int n = 0; n < 6; ++n) {
    const double ip =
        integrate_semi_infinite(
            [&](double z) {
              return t6.eval_polys(z)[n] * tp.eval_polys(z)[n] * t6.weight.w(z);
            },
            q)
            .value;
    worst_u = std::max(worst_u, std::abs((ip - 1.0) / hu - t6.upsilon_diag[n]));
  }
  c.require(worst_u < 1e-6, "d_Ups diagonal identity error " + fmt(worst_u));
  return c;
}

// 2. matrix structure
Check criterion_matrices() {
  Check c;
  for (double u : {0.5, 1.0, 1.5}) {
    const auto t = build_basis(WeightFamily::noneq(u), 6);
    const auto m = assemble_matrices(t);
    c.require(std::abs(m.a(0, 0) + 3.0) < 1e-11,
              "A00 = " + fmt(m.a(0, 0)) + " at Ups=" + fmt(u));

    QuadratureOptions q;
    q.decay_rate = 1.0;
    q.poly_degree = 2 * 6 + 6;
    auto ip = [&](const Integrand& f) {
      return integrate_semi_infinite(
                 [&](double z) { return f(z) * t.weight.w(z); }, q)
          .value;
    };

    double above = 0.0, diag = 0.0;
    for (int k = 0; k < 6; ++k)
      for (int i = 0; i < 6; ++i) {
        // raw definitions, no triangular shortcut
        const double a_raw = ip([&](double z) {
          const auto v = t.eval_polys(z);
          return t.weight.kinetic_factor(z) * v[i] * v[k] +
                 z * t.eval_poly_deriv(i, z) * v[k];
        });
        const double c_part = ip([&](double z) {
          const auto v = t.eval_polys(z);
          return t.weight.fugacity_factor(z) * v[i] * v[k];
        });
        // D-part above the diagonal from the exact derivative relation
        // <d_Ups psihat_i, psihat_k> = -int psihat_i psihat_k d_Ups(w) dz, k<i
        double d_part = 0.0;
        if (k < i) {
          QuadratureOptions qd = q;
          d_part = -u * integrate_semi_infinite(
                            [&](double z) {
                              const auto v = t.eval_polys(z);
                              return v[i] * v[k] * t.weight.dw_dupsilon(z);
                            },
                            qd)
                            .value;
        }
        const double b_raw = c_part + d_part;
        if (i > k) {
          above = std::max(above, std::abs(a_raw));
          above = std::max(above, std::abs(b_raw));
        } else if (i == k) {
          diag = std::max(diag, std::abs(a_raw - m.a(k, k)));
        }
      }
    c.require(above < 1e-12, "above-diagonal magnitude " + fmt(above));
    c.require(diag < 1e-10, "dual-formula diagonal gap " + fmt(diag));

    const auto b = full_b(t, std::vector<double>(4, 0.0));
    const double K = determinant_K(m, b, t);
    c.require(K < 0.0, "K = " + fmt(K) + " not negative at kinetic equilibrium");
  }
  return c;
}

// 3. moment capture along trajectories, independent of the mode count
Check criterion_moment_capture() {
  Check c;
  const struct {
    const char* scenario;
    int n;
  } runs[] = {{"reheating-r1.1", 2}, {"reheating-r2.0", 2},
              {"reheating-r2.0", 6}, {"attractor-u0.5", 5}};
  for (const auto& rc : runs) {
    const auto& run = *suite.get(rc.scenario, Method::NonEq, rc.n).noneq;
    double worst = 0.0;
    for (std::size_t i = 0; i < run.samples.size(); i += 25) {
      const auto& s = run.samples[i];
      const auto tab = build_basis(WeightFamily::noneq(s.upsilon), run.n_modes);
      SpectralStateNE st;
      st.T = s.T;
      st.upsilon = s.upsilon;
      st.b = s.b;
      QuadratureOptions q;
      q.decay_rate = 1.0;
      q.poly_degree = run.n_modes + 6;
      q.rel_tol = 1e-13;
      const double n_direct =
          run.cfg.g_p * std::pow(s.T, 3) / (2 * M_PI * M_PI) *
          integrate_semi_infinite(
              [&](double z) { return reconstruct_f(st, tab, z) * z * z; }, q)
              .value;
      const double rho_direct =
          run.cfg.g_p * std::pow(s.T, 4) / (2 * M_PI * M_PI) *
          integrate_semi_infinite(
              [&](double z) { return reconstruct_f(st, tab, z) * z * z * z; }, q)
              .value;
      worst = std::max(worst, std::abs(n_direct / s.n - 1.0));
      worst = std::max(worst, std::abs(rho_direct / s.rho - 1.0));
    }
    c.require(worst < 1e-10, std::string(rc.scenario) + " N=" +
                                 std::to_string(rc.n) + " capture gap " + fmt(worst));
  }
  return c;
}

// 4. reheating test, non-equilibrium method
Check criterion_reheating_noneq() {
  Check c;
  for (const char* sc : {"reheating-r1.1", "reheating-r1.4", "reheating-r2.0"}) {
    const auto& r = suite.get(sc, Method::NonEq, 2).report;
    c.require(r.max_rel_n_err <= 1e-9,
              std::string(sc) + " n err " + fmt(r.max_rel_n_err));
    c.require(r.max_rel_rho_err <= 1e-9,
              std::string(sc) + " rho err " + fmt(r.max_rel_rho_err));
  }
  const auto& ne2 = suite.get("reheating-r2.0", Method::NonEq, 2).report;
  const auto& ce4 = suite.get("reheating-r2.0", Method::ChemEq, 4).report;
  c.require(ne2.max_l1_err < ce4.max_l1_err,
            "NE N=2 L1 " + fmt(ne2.max_l1_err) + " !< CE N=4 L1 " +
                fmt(ce4.max_l1_err));

  // L1-vs-time non-increasing over the final quarter at R = 2
  const auto& series = suite.get("reheating-r2.0", Method::NonEq, 2).series;
  const double t_q = 0.75 * suite.get("reheating-r2.0", Method::NonEq, 2).cfg.t_final;
  for (std::size_t i = 1; i < series.t.size(); ++i)
    if (series.t[i - 1] >= t_q)
      c.require(series.l1[i] <= series.l1[i - 1] * (1.0 + 1e-6) + 1e-15,
                "L1 increased at t=" + fmt(series.t[i]));
  return c;
}

// 5. reheating test, chemical-equilibrium method
Check criterion_reheating_chemeq() {
  Check c;
  for (const char* sc : {"reheating-r1.1", "reheating-r1.4"}) {
    const auto& n2 = suite.get(sc, Method::ChemEq, 2).report;
    const auto& n3 = suite.get(sc, Method::ChemEq, 3).report;
    const auto& n4 = suite.get(sc, Method::ChemEq, 4).report;
    c.require(n2.max_rel_n_err > 1e-9,
              std::string(sc) + " N=2 n err only " + fmt(n2.max_rel_n_err));
    c.require(n3.max_rel_n_err <= 1e-9,
              std::string(sc) + " N=3 n err " + fmt(n3.max_rel_n_err));
    c.require(n4.max_rel_n_err <= 1e-9,
              std::string(sc) + " N=4 n err " + fmt(n4.max_rel_n_err));
    c.require(n3.max_rel_rho_err > 1e-9,
              std::string(sc) + " N=3 rho err only " + fmt(n3.max_rel_rho_err));
    c.require(n4.max_rel_rho_err <= 1e-9,
              std::string(sc) + " N=4 rho err " + fmt(n4.max_rel_rho_err));
  }

  // R = 2: outside the Hilbert space; the error is large and grows late
  const auto& r2 = suite.get("reheating-r2.0", Method::ChemEq, 10);
  c.require(r2.report.max_l1_err > 1e-2,
            "R=2 N=10 max L1 " + fmt(r2.report.max_l1_err));
  const auto& s = r2.series;
  double at_3q = 0.0;
  for (std::size_t i = 0; i < s.t.size(); ++i)
    if (s.t[i] <= 0.75 * r2.cfg.t_final) at_3q = s.l1[i];
  c.require(s.l1.back() > at_3q,
            "R=2 L1 does not grow over the final quarter (" + fmt(at_3q) +
                " -> " + fmt(s.l1.back()) + ")");

  // R = 1.1: error decreases with N down to a plateau <= 1e-6 by N = 10
  std::vector<double> errs;
  for (int n = 2; n <= 10; ++n)
    errs.push_back(suite.get("reheating-r1.1", Method::ChemEq, n).report.max_l1_err);
  for (std::size_t i = 1; i < errs.size(); ++i)
    c.require(errs[i] <= errs[i - 1] * 1.25 + 1e-12,
              "R=1.1 L1 not decreasing at N=" + std::to_string(i + 2) + " (" +
                  fmt(errs[i - 1]) + " -> " + fmt(errs[i]) + ")");
  c.require(errs.back() <= 1e-6, "R=1.1 N=10 L1 " + fmt(errs.back()));
  c.require(errs.back() < errs.front(), "R=1.1 L1 did not decrease overall");
  return c;
}

// 6. attractor test
Check criterion_attractor() {
  Check c;
  for (const char* sc :
       {"attractor-u1.5", "attractor-u0.9", "attractor-u0.75", "attractor-u0.5"}) {
    const auto& ne = suite.get(sc, Method::NonEq, 2).report;
    const auto& ce = suite.get(sc, Method::ChemEq, 4).report;
    c.require(ne.max_l1_err <= ce.max_l1_err,
              std::string(sc) + " NE N=2 L1 " + fmt(ne.max_l1_err) +
                  " !<= CE N=4 L1 " + fmt(ce.max_l1_err));
    c.require(ne.final_l1_err * 100.0 <= ne.max_l1_err,
              std::string(sc) + " final/max = " +
                  fmt(ne.final_l1_err / ne.max_l1_err));
  }
  return c;
}

// 7. free-streaming invariants in the eps form
Check criterion_free_streaming() {
  Check c;
  ScenarioConfig cfg = scenario_preset("reheating-r2.0");
  cfg.M = 0.0;
  cfg.sample_count = 101;
  const auto run = run_noneq(cfg, 4);
  c.require(run.switched && run.switch_time == 0.0, "did not switch at t=0");
  const auto& first = run.samples.front();
  double d_ups = 0.0, d_aT = 0.0, d_n = 0.0, d_b = 0.0;
  for (const auto& s : run.samples) {
    const double a = background(s.t, cfg).a;
    d_ups = std::max(d_ups, std::abs(s.upsilon / first.upsilon - 1.0));
    d_aT = std::max(d_aT, std::abs(a * s.T - 1.0));
    d_n = std::max(d_n, std::abs(s.n * a * a * a / first.n - 1.0));
    for (std::size_t k = 0; k < s.b.size(); ++k)
      d_b = std::max(d_b, std::abs(s.b[k] - first.b[k]));
  }
  c.require(d_ups < 1e-11, "Upsilon drift " + fmt(d_ups));
  c.require(d_aT < 1e-11, "aT drift " + fmt(d_aT));
  c.require(d_n < 1e-11, "comoving n drift " + fmt(d_n));
  c.require(d_b < 1e-11, "mode drift " + fmt(d_b));
  return c;
}

// 8. exact-solution oracle self-check
Check criterion_exact_solution() {
  Check c;
  const ScenarioConfig cfg = scenario_preset("reheating-r1.4");
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> ydist(0.02, 14.0);
  std::uniform_real_distribution<double> tdist(0.2, 9.8);
  const double h = 1e-5;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double y = ydist(rng), t = tdist(rng);
    const double dfdt =
        (exact_solution_y(y, t + h, cfg) - exact_solution_y(y, t - h, cfg)) / (2 * h);
    const auto bg = background(t, cfg);
    const double rhs = cfg.M * (equilibrium_f(y / (bg.a * bg.T_eq), cfg.upsilon_target) -
                                exact_solution_y(y, t, cfg));
    worst = std::max(worst, std::abs(dfdt - rhs));
  }
  c.require(worst < 1e-6, "ODE residual " + fmt(worst));

  // independent method-of-lines solve on a y-grid (each y decouples)
  IntegratorConfig icfg;
  icfg.rel_tol = 1e-12;
  icfg.abs_tol = 1e-14;
  double worst_mol = 0.0;
  for (double y = 0.25; y < 12.0; y += 0.75) {
    OdeRhs rhs = [&, y](double t, std::span<const double> f, std::span<double> df) {
      const auto bg = background(t, cfg);
      df[0] = cfg.M * (equilibrium_f(y / (bg.a * bg.T_eq), cfg.upsilon_target) - f[0]);
    };
    const std::vector<double> f0{equilibrium_f(y, 1.0)};
    const auto sol = integrate_ode(rhs, f0, 0.0, 3.0, {}, icfg);
    worst_mol = std::max(worst_mol,
                         std::abs(sol.y_end[0] - exact_solution_y(y, 3.0, cfg)));
  }
  c.require(worst_mol < 1e-8, "method-of-lines gap " + fmt(worst_mol));
  return c;
}

// 9. basis comparison study
Check criterion_basis_study() {
  Check c;
  const double ups[] = {0.9, 1.0};
  const double rr[] = {1.1, 2.0};
  const auto entries = basis_study(ups, rr, 10, Execution::Parallel);
  for (const auto& e : entries) {
    if (e.upsilon == 0.9 && e.R == 1.1) {
      for (std::size_t i = 1; i < e.err_chemeq.size(); ++i)
        c.require(e.err_chemeq[i] < e.err_chemeq[i - 1],
                  "error_N not monotone at N=" + std::to_string(i + 1));
      // Laguerre coefficients sit significantly above the ChemEq ones
      double sl = 0.0, sc_ = 0.0;
      for (std::size_t k = 1; k < e.coeff_chemeq.size(); ++k) {
        sl += e.coeff_laguerre[k];
        sc_ += e.coeff_chemeq[k];
        c.require(e.coeff_laguerre[k] > e.coeff_chemeq[k],
                  "coefficient ordering violated at k=" + std::to_string(k));
      }
      c.require(sl > 2.0 * sc_, "Laguerre coefficients not significantly higher");
    }
    if (e.upsilon == 1.0 && e.R == 2.0) {
      c.require(e.divergent, "R=2 divergence flag not raised");
      double emin = 1e300;
      for (double v : e.err_chemeq) emin = std::min(emin, v);
      c.require(emin > 1e-2, "R=2 partial sums reached " + fmt(emin));
    }
  }
  return c;
}

// 10. determinism of the result files
Check criterion_determinism() {
  Check c;
  ScenarioConfig cfg = scenario_preset("reheating-r1.4");
  cfg.sample_count = 41;
  auto payload = [&]() {
    std::vector<RunResult> rs;
    rs.push_back(run_scenario(cfg, Method::NonEq, 3, Execution::Parallel));
    rs.push_back(run_scenario(cfg, Method::ChemEq, 3, Execution::Parallel));
    std::string all = runs_csv_header();
    for (const auto& r : rs) {
      all += runs_csv_row(r);
      all += trajectory_csv(r);
      all += series_csv(r);
    }
    const double u[] = {0.9};
    const double rr[] = {1.1};
    all += basis_study_csv(basis_study(u, rr, 5, Execution::Parallel));
    return all;
  };
  const std::string a = payload();
  const std::string b = payload();
  c.require(a == b, "repeated runs produced different bytes");
  c.require(!a.empty(), "empty payload");
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Check()> fn;
  };
  const std::vector<Entry> criteria{
      {1, "basis correctness", criterion_basis},
      {2, "matrix structure", criterion_matrices},
      {3, "moment capture", criterion_moment_capture},
      {4, "reheating test, non-equilibrium method", criterion_reheating_noneq},
      {5, "reheating test, chemical-equilibrium method", criterion_reheating_chemeq},
      {6, "attractor test", criterion_attractor},
      {7, "free-streaming invariants", criterion_free_streaming},
      {8, "exact-solution oracle self-check", criterion_exact_solution},
      {9, "basis comparison study", criterion_basis_study},
      {10, "determinism", criterion_determinism},
  };

  int failures = 0;
  for (const auto& e : criteria) {
    Check c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.ok = false;
      c.detail = std::string("exception: ") + ex.what();
    }
    std::printf("criterion %2d [%s]: %s%s%s\n", e.id, e.name,
                c.ok ? "PASS" : "FAIL", c.detail.empty() ? "" : " -- ",
                c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  return failures;
}
