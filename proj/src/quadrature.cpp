// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#include "specboltz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace specboltz {

namespace {

// Gauss-Kronrod (7,15) abscissae and weights on [-1,1] (QUADPACK dqk15).
// Even-indexed abscissae carry the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  double value;
  double err;
  bool operator<(const Panel& other) const { return err < other.err; }
};

Panel gk15(const Integrand& g, double lo, double hi, long& evals) {
  const double h = 0.5 * (hi - lo);
  const double c = 0.5 * (hi + lo);
  double fc = g(c);
  evals += 15;
  if (!std::isfinite(fc))
    throw NonFiniteIntegrand("non-finite integrand sample at z = " +
                             std::to_string(c));
  double res_k = kWgk[7] * fc;
  double res_g = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = g(c - dx);
    const double f2 = g(c + dx);
    if (!std::isfinite(f1) || !std::isfinite(f2))
      throw NonFiniteIntegrand("non-finite integrand sample near z = " +
                               std::to_string(c));
    res_k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
  }
  // |K15 - G7| overestimates the K15 error for smooth integrands; taken
  // plainly it just forces a little extra subdivision.
  return Panel{lo, hi, res_k * h, std::abs((res_k - res_g) * h)};
}

IntegralResult adaptive(const Integrand& g, double lo, double hi,
                        const QuadratureOptions& opt, int initial_panels) {
  IntegralResult out;
  if (!(hi > lo)) return out;

  std::priority_queue<Panel> heap;
  double total = 0.0, total_err = 0.0;
  const double width = (hi - lo) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    Panel p = gk15(g, lo + i * width, i + 1 == initial_panels ? hi : lo + (i + 1) * width,
                   out.evaluations);
    total += p.value;
    total_err += p.err;
    heap.push(p);
  }

  int panels = initial_panels;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (panels >= opt.max_panels)
      throw NonConvergence("quadrature panel budget exhausted (" +
                           std::to_string(panels) + " panels, err " +
                           std::to_string(total_err) + ")");
    Panel worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.err;
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi)
      throw NonConvergence("quadrature panel collapsed below machine spacing");
    for (Panel p : {gk15(g, worst.lo, mid, out.evaluations),
                    gk15(g, mid, worst.hi, out.evaluations)}) {
      total += p.value;
      total_err += p.err;
      heap.push(p);
    }
    ++panels;
  }
  out.value = total;
  out.error_estimate = total_err;
  return out;
}

}  // namespace

double tail_cutoff(double decay_rate, int poly_degree, double abs_tol) {
  // int_z^inf s^d e^{-ls} ds = (d!/l^{d+1}) e^{-lz} sum_{k<=d} (lz)^k/k!,
  // solved for z in log form to stay finite at large degree.
  const double l = decay_rate;
  const int d = std::max(poly_degree, 0);
  double log_pref = 0.0;  // log(d!/l^{d+1})
  for (int k = 2; k <= d; ++k) log_pref += std::log(double(k));
  log_pref -= (d + 1) * std::log(l);

  auto log_tail = [&](double z) {
    double term = 1.0, sum = 1.0;  // sum_{k<=d} (lz)^k/k!
    for (int k = 1; k <= d; ++k) {
      term *= l * z / k;
      sum += term;
    }
    return log_pref - l * z + std::log(sum);
  };

  const double log_tol = std::log(abs_tol);
  if (log_tail(0.0) <= log_tol) return 0.0;
  double hi = 8.0;
  while (log_tail(hi) > log_tol && hi < 1e7) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-9 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_tail(mid) > log_tol ? lo : hi) = mid;
  }
  return hi;
}

IntegralResult integrate_finite(const Integrand& g, double lo, double hi,
                                const QuadratureOptions& opt) {
  if (hi <= lo) return {};
  const int initial = std::clamp(int((hi - lo) / 4.0) + 1, 1, 64);
  return adaptive(g, lo, hi, opt, initial);
}

IntegralResult integrate_semi_infinite(const Integrand& g,
                                       const QuadratureOptions& opt) {
  const double z_max =
      tail_cutoff(opt.decay_rate, opt.poly_degree, 0.01 * opt.abs_tol);
  const int initial = std::clamp(int(z_max / 4.0) + 1, 4, 128);
  return adaptive(g, 0.0, z_max, opt, initial);
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev starting guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

CompositeGrid CompositeGrid::build(double z_max, int panels, int order) {
  std::vector<double> x, w;
  gauss_legendre(order, x, w);
  CompositeGrid grid;
  grid.z_max = z_max;
  grid.nodes.reserve(std::size_t(panels) * order);
  grid.weights.reserve(std::size_t(panels) * order);
  const double h = z_max / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = (p + 0.5) * h;
    for (int j = 0; j < order; ++j) {
      grid.nodes.push_back(c + 0.5 * h * x[j]);
      grid.weights.push_back(0.5 * h * w[j]);
    }
  }
  return grid;
}

}  // namespace specboltz
