#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "sicpath/complex_vector.hpp"
#include "sicpath/gabor.hpp"

namespace sicpath {

// The gauge-fixed biangular variety
//   C_d = { v : v(0) = 1, G(v) biangular },
// cut out by differencing correlations against the reference angles
// a[1][0] (alpha) and a[0][1] (beta).  Free real coordinates are
// (Re v(1), Im v(1), ..., Re v(d-1), Im v(d-1)); v(0) is pinned to 1, which
// removes the C^x scaling degeneracy.

inline constexpr double kOnVarietyTol = 1e-9;
inline constexpr double kBiangularTol = 1e-9;

// Flatten the free coordinates of a gauge vector and back.
Eigen::VectorXd pack_free(const ComplexVector& v);
ComplexVector unpack_free(const Eigen::VectorXd& x);

class ResidualSystem {
 public:
  explicit ResidualSystem(int d);

  int dim() const { return d_; }

  // Number of residual equations: (d-2) alpha differences plus (d^2-d-1)
  // beta differences.  The adjoint symmetry a[k][l] = a[d-k][d-l] makes
  // about half of these redundant; the full set is kept, and the
  // overdetermined least-squares problem is solved as-is.
  int num_residuals() const { return static_cast<int>(eqs_.size()); }

  // Residual i is a[k_i][l_i] - a[ref_i], evaluated at the gauge vector.
  Eigen::VectorXd residuals(const ComplexVector& v) const;
  Eigen::VectorXd residuals_free(const Eigen::VectorXd& x) const;

  // Analytic Jacobian, num_residuals() x 2(d-1), matching central finite
  // differences of residuals_free.
  Eigen::MatrixXd jacobian(const ComplexVector& v) const;
  Eigen::MatrixXd jacobian_free(const Eigen::VectorXd& x) const;

  double residual_norm(const ComplexVector& v) const { return residuals(v).norm(); }

 private:
  struct Eq {
    int k, l;          // correlation index of this equation
    int ref_k, ref_l;  // reference angle it is differenced against
  };
  int d_;
  std::vector<Eq> eqs_;
};

// Gradient of a[k][l] = |<v, M^l T^k v>|^2 with respect to the full 2d real
// coordinates (Re v(0), Im v(0), ..., Re v(d-1), Im v(d-1)).
Eigen::VectorXd correlation_entry_gradient(const ComplexVector& v, int k, int l);

struct VarietyPoint {
  ComplexVector v;       // gauge v(0) = 1
  double residual_norm;  // Euclidean norm of the residual vector
};

VarietyPoint make_variety_point(const ResidualSystem& sys, const ComplexVector& v);

// Gauge representative with v(0) = 1 exactly: translate the
// largest-magnitude entry to index 0 (a relabeling of Z_d, which permutes
// correlations within their alpha/beta classes) and divide by the new v(0).
// The translation guarantees |v(0)| >= ||v|| / sqrt(d) before the division.
ComplexVector canonical_gauge(const ComplexVector& v);

// beta - alpha of the unit-normalized vector; for unit-norm biangular v this
// equals (1 - (d+1) alpha) / d, so a sign change brackets an equiangular
// point.  Invariant under v -> c v.
double delta(const ComplexVector& v);

// |alpha + d beta - ||v||^4|, which vanishes identically on biangular G(v).
// Throws NotBiangular when the angle spreads exceed tol.
double angle_balance_defect(const ComplexVector& v, double tol = kBiangularTol);

}  // namespace sicpath
