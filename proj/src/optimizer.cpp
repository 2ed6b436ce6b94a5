#include "sicpath/optimizer.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "sicpath/errors.hpp"
#include "sicpath/gabor.hpp"
#include "sicpath/rng.hpp"

namespace sicpath {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct LmResult {
  VectorXd x;
  double residual_norm;
  int iterations;
  bool converged;
  TerminationReason reason;
};

// Levenberg-Marquardt on a generic residual system.  Solves
// (J^T J + lambda I) step = -J^T r, growing lambda on rejected steps and
// shrinking it on accepted ones.  Steps longer than cfg.step_limit are
// scaled back; the variety Jacobian is rank-deficient along the tangent
// directions, and the damping keeps those solves well posed.
LmResult lm_minimize(const std::function<VectorXd(const VectorXd&)>& residuals,
                     const std::function<MatrixXd(const VectorXd&)>& jacobian, VectorXd x,
                     const OptimizerConfig& cfg) {
  constexpr double kDampingMax = 1e12;
  VectorXd r = residuals(x);
  double obj = 0.5 * r.squaredNorm();
  if (!std::isfinite(obj))
    return {x, std::numeric_limits<double>::quiet_NaN(), 0, false, TerminationReason::NonFinite};

  double lambda = cfg.initial_damping;
  const int n = static_cast<int>(x.size());
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    if (r.norm() <= cfg.residual_tol)
      return {x, r.norm(), it, true, TerminationReason::ResidualTol};
    const MatrixXd J = jacobian(x);
    const VectorXd g = J.transpose() * r;
    if (g.norm() <= cfg.grad_tol) return {x, r.norm(), it, true, TerminationReason::GradTol};
    const MatrixXd JtJ = J.transpose() * J;

    bool accepted = false;
    while (lambda <= kDampingMax) {
      MatrixXd A = JtJ;
      A.diagonal().array() += lambda;
      VectorXd step = A.ldlt().solve(-g);
      const double sn = step.norm();
      if (sn > cfg.step_limit) step *= cfg.step_limit / sn;
      const VectorXd xn = x + step;
      const VectorXd rn = residuals(xn);
      const double objn = 0.5 * rn.squaredNorm();
      if (std::isfinite(objn) && objn < obj) {
        x = xn;
        r = rn;
        obj = objn;
        lambda = std::max(lambda * cfg.damping_down, 1e-15);
        accepted = true;
        break;
      }
      lambda *= cfg.damping_up;
    }
    if (!accepted) return {x, r.norm(), it, false, TerminationReason::Stalled};
  }
  return {x, r.norm(), it, false, TerminationReason::MaxIters};
}

// Equiangularity least squares for the fiducial search: residuals
//   a[k][l](w) - 1/(d+1) for (k,l) != (0,0), plus ||w||^2 - 1.
// Unit-norm zeros of this system are exactly the fiducial vectors, since
// the excess potential equals (1/d) sum ((a - 1/(d+1))^2 on the sphere.
VectorXd pack_full(const ComplexVector& v) {
  VectorXd x(2 * v.dim());
  for (int p = 0; p < v.dim(); ++p) {
    x[2 * p] = v[p].real();
    x[2 * p + 1] = v[p].imag();
  }
  return x;
}

ComplexVector unpack_full(const VectorXd& x) {
  const int d = static_cast<int>(x.size()) / 2;
  std::vector<cplx> e(d);
  for (int p = 0; p < d; ++p) e[p] = cplx(x[2 * p], x[2 * p + 1]);
  return ComplexVector(std::move(e));
}

VectorXd equiangular_residuals(const VectorXd& x, int d) {
  const ComplexVector v = unpack_full(x);
  const CorrelationTable t = correlation_table(v);
  const double target = 1.0 / (d + 1);
  VectorXd r(d * d);
  int i = 0;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      if (k != 0 || l != 0) r[i++] = t(k, l) - target;
  r[i] = v.norm_sq() - 1.0;
  return r;
}

MatrixXd equiangular_jacobian(const VectorXd& x, int d) {
  const ComplexVector v = unpack_full(x);
  MatrixXd J(d * d, 2 * d);
  int i = 0;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      if (k != 0 || l != 0) J.row(i++) = correlation_entry_gradient(v, k, l).transpose();
  J.row(i) = 2.0 * x.transpose();
  return J;
}

// One projected-gradient descent run on the unit sphere.  The Riemannian
// gradient removes the radial component; candidate steps renormalize and
// backtrack under the Armijo rule f(u) <= f(v) - 1e-4 t ||g||^2.
ComplexVector sphere_descent(ComplexVector v, int max_iters, double target, int* iters_used) {
  double val = frame_potential_raw(v);
  double t = 0.5;
  int it = 0;
  for (; it < max_iters; ++it) {
    VectorXd g = frame_potential_gradient(v);
    const VectorXd xv = pack_full(v);
    const VectorXd gr = g - g.dot(xv) * xv;  // tangent projection, ||xv|| = 1
    const double gn2 = gr.squaredNorm();
    if (gn2 < 1e-26 || val <= target) break;
    t = std::min(t * 2.0, 10.0);
    bool accepted = false;
    while (t > 1e-18) {
      VectorXd xu = xv - t * gr;
      xu /= xu.norm();
      const ComplexVector u = unpack_full(xu);
      const double nv = frame_potential_raw(u);
      if (nv <= val - 1e-4 * t * gn2) {
        v = u;
        val = nv;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  if (iters_used) *iters_used = it;
  return v;
}

}  // namespace

std::string to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::ResidualTol: return "residual_tol";
    case TerminationReason::GradTol: return "grad_tol";
    case TerminationReason::MaxIters: return "max_iters";
    case TerminationReason::Stalled: return "stalled";
    case TerminationReason::NonFinite: return "non_finite";
  }
  return "unknown";
}

OptimizeReport minimize_residual(const ResidualSystem& sys, const ComplexVector& v0,
                                 const OptimizerConfig& cfg) {
  if (std::abs(v0[0] - cplx(1.0, 0.0)) > 1e-12)
    throw GaugeViolation("minimize_residual requires v0(0) = 1");
  const LmResult res = lm_minimize(
      [&sys](const VectorXd& x) { return sys.residuals_free(x); },
      [&sys](const VectorXd& x) { return sys.jacobian_free(x); }, pack_free(v0), cfg);
  return OptimizeReport{unpack_free(res.x), res.residual_norm, res.iterations, res.converged,
                        res.reason};
}

Eigen::VectorXd frame_potential_gradient(const ComplexVector& v) {
  const int d = v.dim();
  const CorrelationTable t = correlation_table(v);
  VectorXd g = VectorXd::Zero(2 * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      g += (2.0 / d) * t(k, l) * correlation_entry_gradient(v, k, l);
  return g;
}

OptimizeReport minimize_frame_potential(int d, std::uint64_t seed, const OptimizerConfig& cfg,
                                        int restarts) {
  if (d < 2) throw BadDimension("minimize_frame_potential requires d >= 2");
  if (restarts < 1) restarts = 1;
  const double bound = 2.0 / (d + 1);

  Rng rng(seed);
  bool have_best = false;
  double best_val = std::numeric_limits<double>::infinity();
  ComplexVector best_v = ComplexVector::zeros(d);
  int best_iters = 0;

  OptimizerConfig polish = cfg;
  polish.max_iters = std::max(cfg.max_iters, 300);
  polish.residual_tol = 1e-13;

  for (int run = 0; run < restarts; ++run) {
    int pgd_iters = 0;
    ComplexVector v =
        sphere_descent(rng.random_unit_vector(d), 2000, bound + 1e-8, &pgd_iters);
    const LmResult res = lm_minimize(
        [d](const VectorXd& x) { return equiangular_residuals(x, d); },
        [d](const VectorXd& x) { return equiangular_jacobian(x, d); }, pack_full(v), polish);
    ComplexVector w = unpack_full(res.x);
    if (w.norm_sq() == 0.0) continue;
    w = w.normalized();
    const double val = frame_potential_raw(w);
    if (!have_best || val < best_val) {
      have_best = true;
      best_val = val;
      best_v = w;
      best_iters = pgd_iters + res.iterations;
    }
  }

  const double excess = best_val - bound;
  const bool ok = have_best && excess <= cfg.potential_tol;
  return OptimizeReport{best_v, excess, best_iters, ok,
                        ok ? TerminationReason::ResidualTol : TerminationReason::MaxIters};
}

VarietyPoint refine_sic(const ResidualSystem& sys, const VarietyPoint& v_lo,
                        const VarietyPoint& v_hi, const OptimizerConfig& cfg,
                        double on_variety_tol) {
  if (v_lo.residual_norm > on_variety_tol || v_hi.residual_norm > on_variety_tol)
    throw InvalidBracket("bracket endpoints are not on the variety");
  double d_lo = delta(v_lo.v);
  double d_hi = delta(v_hi.v);
  if (std::abs(d_lo) <= cfg.delta_tol) return v_lo;
  if (std::abs(d_hi) <= cfg.delta_tol) return v_hi;
  if ((d_lo > 0) == (d_hi > 0))
    throw InvalidBracket("Delta has the same sign at both bracket endpoints");

  VectorXd x_lo = pack_free(v_lo.v);
  VectorXd x_hi = pack_free(v_hi.v);
  constexpr int kMaxBisections = 200;
  for (int it = 0; it < kMaxBisections; ++it) {
    const VectorXd x_mid = 0.5 * (x_lo + x_hi);
    const OptimizeReport proj = minimize_residual(sys, unpack_free(x_mid), cfg);
    if (!proj.converged || proj.residual_norm > 10.0 * on_variety_tol)
      throw ProjectionLost("midpoint re-projection left the variety (residual " +
                           std::to_string(proj.residual_norm) + ")");
    const double d_mid = delta(proj.v_final);
    if (std::abs(d_mid) <= cfg.delta_tol)
      return VarietyPoint{proj.v_final, proj.residual_norm};
    if ((d_mid > 0) == (d_lo > 0)) {
      x_lo = pack_free(proj.v_final);
      d_lo = d_mid;
    } else {
      x_hi = pack_free(proj.v_final);
      d_hi = d_mid;
    }
  }
  throw ProjectionLost("bisection failed to reach the Delta tolerance");
}

}  // namespace sicpath
