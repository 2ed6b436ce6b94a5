#include "sicpath/traversal.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "sicpath/errors.hpp"
#include "sicpath/gabor.hpp"
#include "sicpath/rng.hpp"

namespace sicpath {

namespace {

TrajectoryPoint make_point(int step, const ComplexVector& v, double residual_norm) {
  const AngleProfile prof = angles(v.normalized());
  return TrajectoryPoint{step, v, prof.alpha, prof.beta, residual_norm};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& tok, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(tok, &pos);
    if (pos != tok.size()) throw ParseError(where + ": trailing characters in '" + tok + "'");
    return x;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(where + ": expected a number, got '" + tok + "'");
  }
}

}  // namespace

Trajectory traverse(const ResidualSystem& sys, const ComplexVector& v_start,
                    const TraversalConfig& cfg) {
  if (cfg.c <= 0.0) throw Error("traverse: c must be positive");
  if (cfg.epsilon0 <= 0.0) throw Error("traverse: epsilon0 must be positive");
  if (cfg.max_steps < 2) throw Error("traverse: max_steps must be at least 2");
  if (v_start.dim() != sys.dim())
    throw DimensionMismatch("traverse: v_start has dimension " + std::to_string(v_start.dim()) +
                            ", residual system expects " + std::to_string(sys.dim()));

  Trajectory traj{sys.dim(), {}};

  OptimizeReport rep = minimize_residual(sys, v_start, cfg.optimizer);
  if (rep.residual_norm > cfg.on_variety_tol)
    throw SeedOffVariety("traverse: projection of the start vector stalled at residual " +
                         std::to_string(rep.residual_norm));
  traj.points.push_back(make_point(0, rep.v_final, rep.residual_norm));

  Rng rng(cfg.rng_seed);
  const int n = 2 * (sys.dim() - 1);
  const double min_step = cfg.c / 10.0;
  const Eigen::VectorXd x0 = pack_free(traj.points[0].v);

  // The perturbation only moves the point by its component tangent to the
  // variety, which can be arbitrarily small for an unlucky draw; redraw from
  // the same stream (deterministically) until the projected step survives.
  bool placed = false;
  for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = rng.gaussian();
    if (cfg.reverse) g = -g;
    rep = minimize_residual(sys, unpack_free(x0 + cfg.epsilon0 * g), cfg.optimizer);
    if (rep.residual_norm > cfg.on_variety_tol) continue;
    if ((pack_free(rep.v_final) - x0).norm() < min_step) continue;
    traj.points.push_back(make_point(1, rep.v_final, rep.residual_norm));
    placed = true;
  }
  if (!placed) return traj;  // every perturbation collapsed back: isolated point

  for (int step = 2; step <= cfg.max_steps; ++step) {
    const Eigen::VectorXd xj = pack_free(traj.points[traj.points.size() - 1].v);
    const Eigen::VectorXd xp = pack_free(traj.points[traj.points.size() - 2].v);
    const Eigen::VectorXd u = xj - xp;
    const double nu = u.norm();
    if (nu == 0.0) break;
    rep = minimize_residual(sys, unpack_free(xj + (cfg.c / nu) * u), cfg.optimizer);
    if (rep.residual_norm > cfg.on_variety_tol) break;
    if ((pack_free(rep.v_final) - xj).norm() < min_step) break;
    traj.points.push_back(make_point(step, rep.v_final, rep.residual_norm));
  }
  return traj;
}

std::vector<std::pair<int, int>> detect_sign_changes(const Trajectory& traj) {
  std::vector<std::pair<int, int>> brackets;
  int prev_sign = 0;
  int prev_index = -1;
  for (std::size_t j = 0; j < traj.points.size(); ++j) {
    const double dlt = traj.points[j].beta - traj.points[j].alpha;
    int s = (dlt > 0.0) - (dlt < 0.0);
    if (s == 0) s = prev_sign;
    if (s != 0 && prev_sign != 0 && s != prev_sign && prev_index == static_cast<int>(j) - 1)
      brackets.emplace_back(prev_index, static_cast<int>(j));
    if (s != 0) {
      prev_sign = s;
      prev_index = static_cast<int>(j);
    }
  }
  return brackets;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "step,alpha,beta,residual_norm";
  for (int j = 0; j < traj.d; ++j) out << ",re_" << j << ",im_" << j;
  out << "\n";
  char buf[64];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out << ',' << buf;
  };
  for (const TrajectoryPoint& p : traj.points) {
    out << p.step;
    put(p.alpha);
    put(p.beta);
    put(p.residual_norm);
    for (int j = 0; j < traj.d; ++j) {
      put(p.v[j].real());
      put(p.v[j].imag());
    }
    out << "\n";
  }
  out.flush();
  if (!out) throw Error("failed while writing " + path);
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 8 || header[0] != "step" || header[1] != "alpha" || header[2] != "beta" ||
      header[3] != "residual_norm" || (header.size() - 4) % 2 != 0)
    throw ParseError(path + ": malformed trajectory header");
  const int d = static_cast<int>(header.size() - 4) / 2;
  for (int j = 0; j < d; ++j) {
    if (header[4 + 2 * j] != "re_" + std::to_string(j) ||
        header[5 + 2 * j] != "im_" + std::to_string(j))
      throw ParseError(path + ": malformed trajectory header");
  }

  Trajectory traj{d, {}};
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != header.size())
      throw ParseError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(f.size()));
    const double step_val = parse_double(f[0], where);
    if (!std::isfinite(step_val) || step_val != std::floor(step_val))
      throw ParseError(where + ": step must be an integer, got '" + f[0] + "'");
    const double alpha = parse_double(f[1], where);
    const double beta = parse_double(f[2], where);
    const double residual_norm = parse_double(f[3], where);
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(residual_norm))
      throw ParseError(where + ": non-finite field");
    std::vector<cplx> e(d);
    for (int j = 0; j < d; ++j)
      e[j] = {parse_double(f[4 + 2 * j], where), parse_double(f[5 + 2 * j], where)};
    for (const cplx& z : e) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ParseError(where + ": non-finite vector entry");
    }
    traj.points.push_back(TrajectoryPoint{static_cast<int>(step_val), ComplexVector(std::move(e)),
                                          alpha, beta, residual_norm});
  }
  if (traj.points.empty()) throw ParseError(path + ": no data rows");
  return traj;
}

}  // namespace sicpath
