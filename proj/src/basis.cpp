// Part of specboltz, a spectral solver for the homogeneous relativistic
// Boltzmann equation with dynamical effective temperature and fugacity.
// SPDX-License-Identifier: Apache-2.0
#include "specboltz/basis.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace specboltz {

WeightFamily WeightFamily::noneq(double upsilon) {
  if (!(upsilon > 0.0))
    throw ConfigError("fugacity must be positive, got " + std::to_string(upsilon));
  return {WeightKind::NonEqFugacity, upsilon};
}

double WeightFamily::f_upsilon(double z) const {
  const double ue = upsilon * std::exp(-z);
  return ue / (1.0 + ue);
}

double WeightFamily::w(double z) const {
  switch (kind) {
    case WeightKind::ChemEq: {
      const double e = std::exp(-z);
      return e / (1.0 + e);
    }
    case WeightKind::NonEqFugacity:
      return z * z * f_upsilon(z);
    case WeightKind::LaguerreType:
      return z * z * std::exp(-z);
    case WeightKind::Exponential:
      return std::exp(-z);
  }
  return 0.0;
}

double WeightFamily::dw_dupsilon(double z) const {
  if (kind != WeightKind::NonEqFugacity) return 0.0;
  const double e = std::exp(-z);
  const double d = 1.0 + upsilon * e;
  return z * z * e / (d * d);
}

double WeightFamily::kinetic_factor(double z) const {
  return -z / (1.0 + upsilon * std::exp(-z));
}

double WeightFamily::fugacity_factor(double z) const {
  return 1.0 / (1.0 + upsilon * std::exp(-z));
}

namespace {

// a_{n+1}^k from the derivative recursion; the <z psihat_l, psihat_k>
// couplings are tridiagonal, so only l in {k-1, k, k+1} contribute.
std::vector<std::vector<double>> derivative_coeffs(
    const std::vector<double>& alpha, const std::vector<double>& beta,
    const std::vector<double>& norms, int n_modes) {
  std::vector<std::vector<double>> a(n_modes);
  if (n_modes > 1) a[1] = {norms[0] / norms[1]};
  for (int n = 1; n + 1 < n_modes; ++n) {
    const double r = norms[n] / norms[n + 1];
    a[n + 1].assign(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
      double s = (k == n) ? 1.0 : 0.0;
      if (k < n) s -= alpha[n] * a[n][k];
      if (k < n - 1) s -= beta[n] * a[n - 1][k];
      for (int l = std::max(0, k - 1); l <= std::min(n - 1, k + 1); ++l) {
        const double coupling = (l == k) ? alpha[l] : beta[std::max(l, k)];
        s += a[n][l] * coupling;
      }
      a[n + 1][k] = r * s;
    }
  }
  return a;
}

}  // namespace

void BasisTable::eval_polys(double z, std::span<double> out) const {
  assert(int(out.size()) >= n_modes);
  out[0] = 1.0 / norms[0];
  if (n_modes > 1) out[1] = (z - alpha[0]) * out[0] * norms[0] / norms[1];
  for (int n = 1; n + 1 < n_modes; ++n)
    out[n + 1] =
        ((z - alpha[n]) * out[n] - beta[n] * out[n - 1]) / beta[n + 1];
}

std::vector<double> BasisTable::eval_polys(double z) const {
  std::vector<double> out(n_modes);
  eval_polys(z, out);
  return out;
}

double BasisTable::eval_poly_deriv(int n, double z) const {
  if (n <= 0) return 0.0;
  const auto vals = eval_polys(z);
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += deriv_coeffs[n][k] * vals[k];
  return s;
}

BasisTable build_basis(const WeightFamily& weight, int n_modes,
                       const BasisOptions& opt) {
  if (n_modes < 1) throw ConfigError("build_basis requires n_modes >= 1");

  BasisTable t;
  t.weight = weight;
  t.n_modes = n_modes;

  // Integrands are psihat_i psihat_j z^k w with total degree <= 2 n_modes + 2
  // and tail e^{-z}; the weight's overall scale min(1, Ups) only moves the
  // cutoff logarithmically.
  double z_max = opt.z_max;
  if (z_max <= 0.0) {
    z_max = tail_cutoff(weight.decay_rate(), 2 * n_modes + 6, 1e-20);
    if (weight.upsilon > 1.0) z_max += std::log(weight.upsilon);
  }
  const int panels = std::max(16, int(z_max / opt.panel_width) + 1);
  const CompositeGrid grid = CompositeGrid::build(z_max, panels, opt.grid_order);

  const std::size_t G = grid.size();
  t.grid_z = grid.nodes;
  t.grid_gl = grid.weights;
  t.grid_w.resize(G);
  for (std::size_t i = 0; i < G; ++i) t.grid_w[i] = weight.w(t.grid_z[i]);

  std::vector<double> meas(G);
  for (std::size_t i = 0; i < G; ++i) meas[i] = t.grid_w[i] * t.grid_gl[i];

  t.alpha.assign(n_modes, 0.0);
  t.beta.assign(n_modes, 0.0);
  t.norms.assign(n_modes, 0.0);
  t.grid_psi.assign(std::size_t(n_modes) * G, 0.0);

  auto row = [&](int n) { return std::span<double>(t.grid_psi.data() + std::size_t(n) * G, G); };

  // Stieltjes: at each level alpha_n, beta_n come from quadrature against the
  // current psihat values; the next monic polynomial is normalized on the grid.
  double ip11 = 0.0;
  for (std::size_t i = 0; i < G; ++i) ip11 += meas[i];
  if (!(ip11 > 0.0) || !std::isfinite(ip11))
    throw QuadratureFailure("weight has non-positive or non-finite mass");
  t.ip_11 = ip11;
  t.norms[0] = std::sqrt(ip11);
  for (std::size_t i = 0; i < G; ++i) row(0)[i] = 1.0 / t.norms[0];

  std::vector<double> mono(G);
  for (int n = 0; n + 1 < n_modes; ++n) {
    auto pn = row(n);
    double an = 0.0;
    for (std::size_t i = 0; i < G; ++i) an += t.grid_z[i] * pn[i] * pn[i] * meas[i];
    t.alpha[n] = an;
    if (n == 0) {
      for (std::size_t i = 0; i < G; ++i)
        mono[i] = t.norms[0] * (t.grid_z[i] - an) * pn[i];
    } else {
      auto pm = row(n - 1);
      double bn = 0.0;
      for (std::size_t i = 0; i < G; ++i) bn += t.grid_z[i] * pn[i] * pm[i] * meas[i];
      t.beta[n] = bn;
      for (std::size_t i = 0; i < G; ++i)
        mono[i] = t.norms[n] * ((t.grid_z[i] - an) * pn[i] - bn * pm[i]);
    }
    double nn = 0.0;
    for (std::size_t i = 0; i < G; ++i) nn += mono[i] * mono[i] * meas[i];
    if (!(nn > 0.0) || !std::isfinite(nn))
      throw LossOfOrthogonality("monic norm collapsed at level " + std::to_string(n + 1));
    t.norms[n + 1] = std::sqrt(nn);
    auto pnx = row(n + 1);
    for (std::size_t i = 0; i < G; ++i) pnx[i] = mono[i] / t.norms[n + 1];
  }
  {
    auto pl = row(n_modes - 1);
    double an = 0.0;
    for (std::size_t i = 0; i < G; ++i) an += t.grid_z[i] * pl[i] * pl[i] * meas[i];
    t.alpha[n_modes - 1] = an;
    if (n_modes > 1) {
      auto pm = row(n_modes - 2);
      double bn = 0.0;
      for (std::size_t i = 0; i < G; ++i) bn += t.grid_z[i] * pl[i] * pm[i] * meas[i];
      t.beta[n_modes - 1] = bn;
    }
  }

  for (std::size_t i = 0; i < G; ++i) t.ip_1z += t.grid_z[i] * meas[i];

  t.deriv_coeffs = derivative_coeffs(t.alpha, t.beta, t.norms, n_modes);

  if (weight.kind == WeightKind::NonEqFugacity) {
    std::vector<double> dw(G);
    for (std::size_t i = 0; i < G; ++i)
      dw[i] = weight.dw_dupsilon(t.grid_z[i]) * t.grid_gl[i];
    t.upsilon_diag.assign(n_modes, 0.0);
    for (int n = 0; n < n_modes; ++n) {
      auto pn = row(n);
      double s = 0.0;
      for (std::size_t i = 0; i < G; ++i) s += pn[i] * pn[i] * dw[i];
      t.upsilon_diag[n] = -0.5 * s;
    }
    for (std::size_t i = 0; i < G; ++i) t.dip_11 += dw[i];
  }

  if (opt.verify) {
    // Independent discretization: different order and incommensurate panel
    // count, evaluated through the recurrence rather than the stored values.
    const int vpanels = int(panels * 1.37) + 3;
    const CompositeGrid vgrid = CompositeGrid::build(z_max, vpanels, 14);
    std::vector<double> gram(std::size_t(n_modes) * n_modes, 0.0);
    std::vector<double> vals(n_modes);
    for (std::size_t i = 0; i < vgrid.size(); ++i) {
      t.eval_polys(vgrid.nodes[i], vals);
      const double m = weight.w(vgrid.nodes[i]) * vgrid.weights[i];
      for (int a = 0; a < n_modes; ++a)
        for (int b = 0; b <= a; ++b) gram[a * n_modes + b] += vals[a] * vals[b] * m;
    }
    double resid = 0.0;
    for (int a = 0; a < n_modes; ++a)
      for (int b = 0; b <= a; ++b)
        resid = std::max(resid, std::abs(gram[a * n_modes + b] - (a == b ? 1.0 : 0.0)));
    t.ortho_residual = resid;
    if (resid > opt.ortho_tol)
      throw LossOfOrthogonality("orthonormality residual " + std::to_string(resid) +
                                " exceeds " + std::to_string(opt.ortho_tol));
  }
  return t;
}

double orthonormality_residual_adaptive(const BasisTable& table,
                                        const QuadratureOptions& opt) {
  QuadratureOptions q = opt;
  q.decay_rate = table.weight.decay_rate();
  q.poly_degree = 2 * table.n_modes + 4;
  double resid = 0.0;
  std::vector<double> vals(table.n_modes);
  for (int a = 0; a < table.n_modes; ++a)
    for (int b = 0; b <= a; ++b) {
      const auto r = integrate_semi_infinite(
          [&](double z) {
            table.eval_polys(z, std::span<double>(vals));
            return vals[a] * vals[b] * table.weight.w(z);
          },
          q);
      resid = std::max(resid, std::abs(r.value - (a == b ? 1.0 : 0.0)));
    }
  return resid;
}

namespace {

// Number of eigenvalues of the Jacobi matrix (diag d, offdiag e, e[0] unused)
// strictly below x, via the Sturm/LDL^T sign count.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e,
                double x) {
  const int n = int(d.size());
  int count = 0;
  double q = d[0] - x;
  if (q < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    if (q == 0.0) q = 1e-300;
    q = d[i] - x - e[i] * e[i] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

GaussRule gauss_rule(const BasisTable& table, int n_points) {
  if (n_points < 1 || n_points > table.n_modes)
    throw ConfigError("gauss_rule requires 1 <= n_points <= n_modes");
  std::vector<double> d(table.alpha.begin(), table.alpha.begin() + n_points);
  std::vector<double> e(table.beta.begin(), table.beta.begin() + n_points);

  // Gershgorin bounds for the symmetric tridiagonal Jacobi matrix.
  double lo = d[0], hi = d[0];
  for (int i = 0; i < n_points; ++i) {
    const double r = (i > 0 ? std::abs(e[i]) : 0.0) +
                     (i + 1 < n_points ? std::abs(e[i + 1]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw EigenFailure("non-finite Jacobi matrix entries");

  GaussRule rule;
  rule.nodes.resize(n_points);
  rule.weights.resize(n_points);
  std::vector<double> vals(table.n_modes);
  for (int k = 0; k < n_points; ++k) {
    // Bisection on the Sturm count isolates the k-th eigenvalue = k-th node.
    double a = lo, b = hi;
    for (int it = 0; it < 200 && (b - a) > 1e-15 * (1.0 + std::abs(b)); ++it) {
      const double mid = 0.5 * (a + b);
      (sturm_count(d, e, mid) <= k ? a : b) = mid;
    }
    const double node = 0.5 * (a + b);
    rule.nodes[k] = node;
    // The normalized Jacobi eigenvector at node x is proportional to
    // (psihat_0(x), ..., psihat_{n-1}(x)), so the Gauss weight is
    // ip_11 * v_0^2 = 1 / sum_j psihat_j(x)^2.
    table.eval_polys(node, vals);
    double s = 0.0;
    for (int j = 0; j < n_points; ++j) s += vals[j] * vals[j];
    rule.weights[k] = 1.0 / s;
  }
  return rule;
}

std::vector<double> expand_function(const BasisTable& table, const Integrand& g,
                                    int n_modes, const QuadratureOptions& opt) {
  if (n_modes > table.n_modes)
    throw ConfigError("expand_function: n_modes exceeds table size");
  std::vector<double> c(n_modes);
  std::vector<double> vals(table.n_modes);
  for (int k = 0; k < n_modes; ++k) {
    const auto r = integrate_semi_infinite(
        [&](double z) {
          table.eval_polys(z, std::span<double>(vals));
          return g(z) * vals[k] * table.weight.w(z);
        },
        opt);
    c[k] = r.value;
  }
  return c;
}

MembershipDiagnostic chemeq_membership(double reheat_ratio) {
  MembershipDiagnostic d;
  d.tail_rate = 2.0 / reheat_ratio - 1.0;
  d.convergent = d.tail_rate > 0.0;
  return d;
}

std::string basis_debug_csv(const BasisTable& table) {
  std::ostringstream os;
  os.precision(17);
  os << "n,alpha,beta,norm\n";
  for (int n = 0; n < table.n_modes; ++n)
    os << n << ',' << table.alpha[n] << ',' << table.beta[n] << ','
       << table.norms[n] << '\n';
  os << "n,k,deriv_coeff\n";
  for (int n = 0; n < table.n_modes; ++n)
    for (int k = 0; k < n; ++k)
      os << n << ',' << k << ',' << table.deriv_coeffs[n][k] << '\n';
  return os.str();
}

}  // namespace specboltz
