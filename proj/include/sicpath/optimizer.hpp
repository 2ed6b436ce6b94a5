#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "sicpath/complex_vector.hpp"
#include "sicpath/variety.hpp"

namespace sicpath {

struct OptimizerConfig {
  int max_iters = 200;
  double grad_tol = 1e-14;
  double residual_tol = 1e-12;
  double initial_damping = 1e-3;
  double damping_up = 10.0;
  double damping_down = 0.1;
  double step_limit = 1.0;
  double potential_tol = 1e-9;  // success margin over 2/(d+1)
  double delta_tol = 1e-10;     // |beta - alpha| target for refinement
};

enum class TerminationReason { ResidualTol, GradTol, MaxIters, Stalled, NonFinite };

std::string to_string(TerminationReason r);

struct OptimizeReport {
  ComplexVector v_final;
  double residual_norm;  // ||r|| for least squares; excess over 2/(d+1) for potential runs
  int iterations;
  bool converged;
  TerminationReason termination_reason;
};

// Damped Gauss-Newton (Levenberg-Marquardt schedule) on (1/2)||residuals||^2
// over the free gauge coordinates.  Accepted steps never increase the
// objective; the returned vector has v(0) = 1 exactly.
OptimizeReport minimize_residual(const ResidualSystem& sys, const ComplexVector& v0,
                                 const OptimizerConfig& cfg);

// Ambient gradient of frame_potential_raw with respect to the 2d real
// coordinates (Re v(0), Im v(0), ...); matches central finite differences.
Eigen::VectorXd frame_potential_gradient(const ComplexVector& v);

// Multi-start fiducial search: projected gradient descent on the unit sphere
// (renormalization retraction, Armijo backtracking) followed by a
// least-squares polish of the equiangularity conditions.  Reports the best
// of `restarts` runs; residual_norm holds the excess potential over 2/(d+1)
// and converged means excess <= cfg.potential_tol.
OptimizeReport minimize_frame_potential(int d, std::uint64_t seed, const OptimizerConfig& cfg,
                                        int restarts = 20);

// Bisection refinement of a Delta = beta - alpha sign change between two
// variety points: midpoints are re-projected onto the variety with
// minimize_residual until |Delta| <= cfg.delta_tol.  The result is a
// numerical SIC seed.
VarietyPoint refine_sic(const ResidualSystem& sys, const VarietyPoint& v_lo,
                        const VarietyPoint& v_hi, const OptimizerConfig& cfg,
                        double on_variety_tol = kOnVarietyTol);

}  // namespace sicpath
