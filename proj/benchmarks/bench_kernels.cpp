// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
//
// Times the OpenMP kernels against their serial reference implementations
// and checks that both produce identical bytes.  Usage: bench_kernels
// [repeats].

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "specboltz/harness.hpp"

using namespace specboltz;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double best_of(int repeats, const F& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

bool series_equal(const ErrorSeries& a, const ErrorSeries& b) {
  if (a.l1 != b.l1 || a.rel_n != b.rel_n || a.rel_rho != b.rel_rho) return false;
  return a.mode_abs_err == b.mode_abs_err;
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::stoi(argv[1]) : 3;
  std::printf("threads available: %d, repeats: %d\n", omp_get_max_threads(), repeats);

  ScenarioConfig cfg = scenario_preset("reheating-r1.4");
  cfg.sample_count = 65;
  cfg.ode_rel_tol = cfg.ode_abs_tol = 1e-11;
  const auto run = run_noneq(cfg, 4);

  ErrorSeries serial_out, parallel_out;
  const double t_serial = best_of(repeats, [&] {
    serial_out = evaluate_series(run, Execution::Serial);
  });
  const double t_parallel = best_of(repeats, [&] {
    parallel_out = evaluate_series(run, Execution::Parallel);
  });
  std::printf("error-series kernel (%d samples, N=%d):\n", cfg.sample_count, 4);
  std::printf("  serial   %8.3f s\n", t_serial);
  std::printf("  parallel %8.3f s   speedup %.2fx   identical: %s\n", t_parallel,
              t_serial / t_parallel, series_equal(serial_out, parallel_out) ? "yes" : "NO");

  const double ups[] = {0.5, 0.9, 1.0, 1.5};
  const double rr[] = {1.0, 1.1, 1.5};
  std::vector<BasisStudyEntry> s1, s2;
  const double t_study_serial =
      best_of(repeats, [&] { s1 = basis_study(ups, rr, 10, Execution::Serial); });
  const double t_study_parallel =
      best_of(repeats, [&] { s2 = basis_study(ups, rr, 10, Execution::Parallel); });
  bool same = s1.size() == s2.size();
  for (std::size_t i = 0; same && i < s1.size(); ++i)
    same = s1[i].err_chemeq == s2[i].err_chemeq &&
           s1[i].err_laguerre == s2[i].err_laguerre &&
           s1[i].coeff_chemeq == s2[i].coeff_chemeq;
  std::printf("basis-study kernel (%zu grid points, n_max=10):\n", s1.size());
  std::printf("  serial   %8.3f s\n", t_study_serial);
  std::printf("  parallel %8.3f s   speedup %.2fx   identical: %s\n",
              t_study_parallel, t_study_serial / t_study_parallel,
              same ? "yes" : "NO");
  return 0;
}
