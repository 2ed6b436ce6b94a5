#include "sicpath/variety.hpp"

#include <cmath>

#include "sicpath/errors.hpp"

namespace sicpath {

namespace {
int mod(int a, int d) {
  int r = a % d;
  return r < 0 ? r + d : r;
}

void check_gauge(const ComplexVector& v) {
  if (std::abs(v[0] - cplx(1.0, 0.0)) > 1e-12)
    throw GaugeViolation("expected v(0) = 1, got (" + std::to_string(v[0].real()) + ", " +
                         std::to_string(v[0].imag()) + ")");
}
}  // namespace

Eigen::VectorXd pack_free(const ComplexVector& v) {
  check_gauge(v);
  const int d = v.dim();
  Eigen::VectorXd x(2 * (d - 1));
  for (int p = 1; p < d; ++p) {
    x[2 * (p - 1)] = v[p].real();
    x[2 * (p - 1) + 1] = v[p].imag();
  }
  return x;
}

ComplexVector unpack_free(const Eigen::VectorXd& x) {
  const int d = static_cast<int>(x.size()) / 2 + 1;
  std::vector<cplx> e(d);
  e[0] = 1.0;
  for (int p = 1; p < d; ++p) e[p] = cplx(x[2 * (p - 1)], x[2 * (p - 1) + 1]);
  return ComplexVector(std::move(e));
}

ResidualSystem::ResidualSystem(int d) : d_(d) {
  if (d < 2) throw BadDimension("ResidualSystem requires d >= 2");
  // alpha class, reference a[1][0]
  for (int k = 2; k < d; ++k) eqs_.push_back({k, 0, 1, 0});
  // beta class, reference a[0][1]
  for (int k = 0; k < d; ++k)
    for (int l = 1; l < d; ++l)
      if (!(k == 0 && l == 1)) eqs_.push_back({k, l, 0, 1});
}

Eigen::VectorXd ResidualSystem::residuals(const ComplexVector& v) const {
  check_gauge(v);
  const CorrelationTable t = correlation_table(v);
  Eigen::VectorXd r(num_residuals());
  for (int i = 0; i < num_residuals(); ++i) {
    const Eq& e = eqs_[i];
    r[i] = t(e.k, e.l) - t(e.ref_k, e.ref_l);
  }
  return r;
}

Eigen::VectorXd ResidualSystem::residuals_free(const Eigen::VectorXd& x) const {
  return residuals(unpack_free(x));
}

Eigen::VectorXd correlation_entry_gradient(const ComplexVector& v, int k, int l) {
  const int d = v.dim();
  const auto& om = omega_table(d);
  k = mod(k, d);
  l = mod(l, d);

  // c = <v, M^l T^k v> = sum_j v(j) conj(w^(jl)) conj(v(j-k)).
  cplx c = 0.0;
  for (int j = 0; j < d; ++j)
    c += v[j] * std::conj(om[(j * l) % d] * v[mod(j - k, d)]);

  // a = |c|^2, so da/dx_p = 2 Re(conj(c) dc/dx_p) with the Wirtinger pair
  //   dc/dv(p)       = conj(w^(pl)) conj(v(p-k))
  //   dc/dconj(v(p)) = conj(w^((p+k)l)) v(p+k)
  Eigen::VectorXd g(2 * d);
  for (int p = 0; p < d; ++p) {
    const cplx dv = std::conj(om[(p * l) % d]) * std::conj(v[mod(p - k, d)]);
    const cplx dvbar = std::conj(om[(mod(p + k, d) * l) % d]) * v[mod(p + k, d)];
    const cplx dre = dv + dvbar;
    const cplx dim = cplx(0.0, 1.0) * (dv - dvbar);
    g[2 * p] = 2.0 * (std::conj(c) * dre).real();
    g[2 * p + 1] = 2.0 * (std::conj(c) * dim).real();
  }
  return g;
}

Eigen::MatrixXd ResidualSystem::jacobian(const ComplexVector& v) const {
  check_gauge(v);
  const int n = 2 * (d_ - 1);
  Eigen::MatrixXd J(num_residuals(), n);
  // gradient of a[1][0] and a[0][1] shared across rows
  const Eigen::VectorXd g_alpha = correlation_entry_gradient(v, 1, 0);
  const Eigen::VectorXd g_beta = correlation_entry_gradient(v, 0, 1);
  for (int i = 0; i < num_residuals(); ++i) {
    const Eq& e = eqs_[i];
    const Eigen::VectorXd g = correlation_entry_gradient(v, e.k, e.l);
    const Eigen::VectorXd& gr = (e.ref_l == 0) ? g_alpha : g_beta;
    // drop the two coordinates of v(0): the gauge pins them
    J.row(i) = (g - gr).segment(2, n).transpose();
  }
  return J;
}

Eigen::MatrixXd ResidualSystem::jacobian_free(const Eigen::VectorXd& x) const {
  return jacobian(unpack_free(x));
}

VarietyPoint make_variety_point(const ResidualSystem& sys, const ComplexVector& v) {
  return VarietyPoint{v, sys.residual_norm(v)};
}

ComplexVector canonical_gauge(const ComplexVector& v) {
  if (v.norm_sq() == 0.0) throw ZeroVector("canonical_gauge of zero vector");
  int arg = 0;
  for (int j = 1; j < v.dim(); ++j) {
    if (std::abs(v[j]) > std::abs(v[arg])) arg = j;
  }
  const ComplexVector w = translate(v, -arg);
  std::vector<cplx> e(w.entries());
  const cplx pivot = e[0];
  for (cplx& z : e) z /= pivot;
  e[0] = 1.0;
  return ComplexVector(std::move(e));
}

double delta(const ComplexVector& v) {
  const AngleProfile p = angles(v.normalized());
  return p.beta - p.alpha;
}

double angle_balance_defect(const ComplexVector& v, double tol) {
  if (v.norm_sq() == 0.0) throw ZeroVector("angle_balance_defect of zero vector");
  const AngleProfile p = angles(v);
  if (p.alpha_spread > tol || p.beta_spread > tol)
    throw NotBiangular("angle spreads " + std::to_string(p.alpha_spread) + ", " +
                       std::to_string(p.beta_spread) + " exceed tolerance");
  const double n2 = v.norm_sq();
  return std::abs(p.alpha + v.dim() * p.beta - n2 * n2);
}

}  // namespace sicpath
