#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sicpath/complex_vector.hpp"
#include "sicpath/optimizer.hpp"
#include "sicpath/variety.hpp"

namespace sicpath {

struct TraversalConfig {
  double c = 0.05;            // extrapolation step along the last direction
  double epsilon0 = 1e-2;     // scale of the initial random perturbation
  int max_steps = 400;        // number of continuation steps (points <= max_steps + 1)
  double on_variety_tol = kOnVarietyTol;
  std::uint64_t rng_seed = 1;
  bool reverse = false;       // negate the initial perturbation (other branch)
  OptimizerConfig optimizer;
};

struct TrajectoryPoint {
  int step;
  ComplexVector v;  // gauge v(0) = 1
  double alpha;     // recomputed from the unit-normalized vector
  double beta;
  double residual_norm;
};

struct Trajectory {
  int d;
  std::vector<TrajectoryPoint> points;
};

// Perturb-and-reminimize continuation along the variety: step 0 projects
// v_start, step 1 projects a random perturbation of scale epsilon0, and each
// later step projects v_j + c (v_j - v_{j-1}) / ||v_j - v_{j-1}||.  The run
// stops at max_steps, when a projection fails to converge below
// on_variety_tol, or when a step stalls (length < c/10).
Trajectory traverse(const ResidualSystem& sys, const ComplexVector& v_start,
                    const TraversalConfig& cfg);

// All consecutive index pairs (j, j+1) where Delta = beta - alpha changes
// sign; an exact zero inherits the previous nonzero sign.  Each pair is a
// valid bracket for refine_sic.
std::vector<std::pair<int, int>> detect_sign_changes(const Trajectory& traj);

// CSV with header step,alpha,beta,residual_norm,re_0,im_0,...,re_{d-1},im_{d-1}
// at full double precision (17 significant digits).
void write_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory read_trajectory_csv(const std::string& path);

}  // namespace sicpath
