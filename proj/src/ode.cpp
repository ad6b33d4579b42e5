// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#include "specboltz/ode.hpp"

#include <algorithm>
#include <cmath>

namespace specboltz {

namespace {

// Dormand-Prince 5(4) tableau (Hairer, Norsett & Wanner II.5).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output coefficients.
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

}  // namespace

OdeSolution integrate_ode(const OdeRhs& rhs, std::span<const double> y0,
                          double t0, double t1,
                          std::span<const double> sample_times,
                          const IntegratorConfig& cfg,
                          const StopCondition& stop) {
  const std::size_t n = y0.size();
  OdeSolution sol;
  sol.y_end.assign(y0.begin(), y0.end());
  sol.t_end = t0;

  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> ytmp(n), yerr(n), ynew(n);
  std::vector<double> rc1(n), rc2(n), rc3(n), rc4(n), rc5(n);

  auto call = [&](double t, const std::vector<double>& yy, std::vector<double>& dy) {
    rhs(t, std::span<const double>(yy), std::span<double>(dy));
    ++sol.stats.rhs_evals;
    for (double v : dy)
      if (!std::isfinite(v)) throw RhsFailure("non-finite derivative at t = " + std::to_string(t));
  };

  std::size_t next_sample = 0;
  auto emit_up_to = [&](double t) {
    // flush all samples with time <= t assuming state == y at time t exactly
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t) {
      sol.sample_times.push_back(sample_times[next_sample]);
      sol.samples.push_back(y);
      ++next_sample;
    }
  };

  if (t1 <= t0) {
    emit_up_to(t0);
    return sol;
  }

  call(t0, y, k1);

  // emit samples that coincide with t0
  while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
    sol.sample_times.push_back(sample_times[next_sample]);
    sol.samples.push_back(y);
    ++next_sample;
  }

  double h = cfg.initial_step;
  if (h <= 0.0) {
    // standard starting-step heuristic from the scaled norms of y and f
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
      dnf += (k1[i] / sk) * (k1[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, t1 - t0);
  }
  if (cfg.max_step > 0.0) h = std::min(h, cfg.max_step);

  double t = t0;
  double facold = 1e-4;
  const double safe = 0.9, facl = 0.2, facr = 10.0, beta = 0.04;
  const double expo1 = 0.2 - beta * 0.75;

  long nstep = 0;
  while (t < t1) {
    if (++nstep > cfg.max_steps)
      throw NonConvergence("ODE step budget exhausted");
    if (std::abs(h) <= std::abs(t) * 2.3e-16)
      throw StepUnderflow("step size underflow at t = " + std::to_string(t));
    bool last = false;
    if (t + 1.01 * h >= t1) {
      h = t1 - t;
      last = true;
    }

    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    call(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    call(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    call(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    call(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    call(t + h, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    call(t + h, ynew, k7);  // FSAL stage

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sk =
          cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (ei / sk) * (ei / sk);
    }
    err = std::sqrt(err / std::max<std::size_t>(n, 1));

    // Lund PI stabilization (Hairer's facependent controller)
    const double fac11 = std::pow(std::max(err, 1e-32), expo1);
    double fac = fac11 / std::pow(facold, beta);
    fac = std::clamp(fac / safe, 1.0 / facr, 1.0 / facl);
    double hnew = h / fac;

    if (err <= 1.0) {
      facold = std::max(err, 1e-4);
      ++sol.stats.accepted;

      // dense-output coefficients for this step
      if (next_sample < sample_times.size() && sample_times[next_sample] <= t + h) {
        for (std::size_t i = 0; i < n; ++i) {
          const double dy = ynew[i] - y[i];
          const double bspl = h * k1[i] - dy;
          rc1[i] = y[i];
          rc2[i] = dy;
          rc3[i] = bspl;
          rc4[i] = dy - h * k7[i] - bspl;
          rc5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                        d6 * k6[i] + d7 * k7[i]);
        }
        while (next_sample < sample_times.size() &&
               sample_times[next_sample] <= t + h + 1e-14 * std::abs(t + h)) {
          const double th = std::clamp((sample_times[next_sample] - t) / h, 0.0, 1.0);
          const double th1 = 1.0 - th;
          std::vector<double> ys(n);
          for (std::size_t i = 0; i < n; ++i)
            ys[i] = rc1[i] + th * (rc2[i] + th1 * (rc3[i] + th * (rc4[i] + th1 * rc5[i])));
          sol.sample_times.push_back(sample_times[next_sample]);
          sol.samples.push_back(std::move(ys));
          ++next_sample;
        }
      }

      t += h;
      y.swap(ynew);
      k1.swap(k7);

      if (stop && stop(t, std::span<const double>(y))) {
        sol.stopped_early = t < t1;
        sol.t_end = t;
        sol.y_end = y;
        return sol;
      }

      if (last || t >= t1) break;
      if (cfg.max_step > 0.0) hnew = std::min(hnew, cfg.max_step);
      h = std::min(hnew, t1 - t);
    } else {
      ++sol.stats.rejected;
      h = h / std::min(1.0 / facl, fac11 / safe);
    }
  }

  sol.t_end = t;
  sol.y_end = y;
  return sol;
}

}  // namespace specboltz
