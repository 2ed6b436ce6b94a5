#include <array>
#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sicpath/constructions.hpp"
#include "sicpath/errors.hpp"
#include "sicpath/fiducial_io.hpp"
#include "sicpath/gabor.hpp"
#include "sicpath/optimizer.hpp"
#include "sicpath/traversal.hpp"
#include "sicpath/variety.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = 3.14159265358979323846;

// Exit codes, kept stable for scripting:
//   0 success, 2 non-convergence, 3 unclassified input, 4 traversal seed off
//   the variety, 5 invalid bracket, 64 usage error, 65 bad data file.
constexpr int kExitOk = 0;
constexpr int kExitNoConverge = 2;
constexpr int kExitUnclassified = 3;
constexpr int kExitOffVariety = 4;
constexpr int kExitBadBracket = 5;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct UsageError {
  std::string msg;
};

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const nlohmann::json& parameters, std::uint64_t rng_seed) {
  const nlohmann::json m{
      {"command", command},           {"parameters", parameters},
      {"tool_version", kVersion},     {"rng_seed", rng_seed},
      {"timestamp", iso_timestamp()},
  };
  const std::string path = out_path + ".manifest.json";
  std::ofstream f(path);
  if (!f) throw sicpath::Error("cannot write " + path);
  f << m.dump(2) << "\n";
}

std::uint64_t apply_seed_env(std::uint64_t seed) {
  const char* s = std::getenv("SICPATH_SEED");
  if (!s || !*s) return seed;
  errno = 0;
  char* end = nullptr;
  const unsigned long long val = std::strtoull(s, &end, 10);
  if (errno != 0 || end == s || *end != '\0')
    throw UsageError{"SICPATH_SEED is not an unsigned integer: '" + std::string(s) + "'"};
  return static_cast<std::uint64_t>(val);
}

void write_svg_polyline(const std::string& path, const std::vector<std::array<double, 2>>& pts,
                        const std::string& xlabel, const std::string& ylabel) {
  if (pts.empty()) throw sicpath::Error("nothing to plot");
  double xmin = pts[0][0], xmax = xmin, ymin = pts[0][1], ymax = ymin;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  const double xr = (xmax > xmin) ? xmax - xmin : 1.0;
  const double yr = (ymax > ymin) ? ymax - ymin : 1.0;
  xmin -= 0.05 * xr;
  xmax += 0.05 * xr;
  ymin -= 0.05 * yr;
  ymax += 0.05 * yr;

  const double w = 640.0, h = 480.0, m = 56.0;
  const auto px = [&](double x) { return m + (x - xmin) / (xmax - xmin) * (w - 2.0 * m); };
  const auto py = [&](double y) { return h - m - (y - ymin) / (ymax - ymin) * (h - 2.0 * m); };

  std::ofstream f(path);
  if (!f) throw sicpath::Error("cannot write " + path);
  char buf[160];
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
       "viewBox=\"0 0 640 480\">\n";
  f << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                "stroke=\"#888888\"/>\n",
                m, m, w - 2.0 * m, h - 2.0 * m);
  f << buf;
  f << "<polyline fill=\"none\" stroke=\"#0b61a4\" stroke-width=\"1.2\" points=\"";
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(p[0]), py(p[1]));
    f << buf;
  }
  f << "\"/>\n";
  std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"#d62728\"/>\n",
                px(pts[0][0]), py(pts[0][1]));
  f << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                "font-size=\"14\">%s</text>\n",
                w / 2.0, h - 14.0, xlabel.c_str());
  f << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"16\" y=\"%.1f\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                "font-size=\"14\" transform=\"rotate(-90 16 %.1f)\">%s</text>\n",
                h / 2.0, h / 2.0, ylabel.c_str());
  f << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\">%.4g"
                "</text>\n",
                m, h - m + 16.0, xmin);
  f << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-family=\"sans-serif\" "
                "font-size=\"11\">%.4g</text>\n",
                w - m, h - m + 16.0, xmax);
  f << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-family=\"sans-serif\" "
                "font-size=\"11\">%.4g</text>\n",
                m - 6.0, h - m, ymin);
  f << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-family=\"sans-serif\" "
                "font-size=\"11\">%.4g</text>\n",
                m - 6.0, m + 10.0, ymax);
  f << buf;
  f << "</svg>\n";
  if (!f) throw sicpath::Error("failed while writing " + path);
}

int cmd_search(int d, int restarts, std::uint64_t seed, std::string out) {
  if (out.empty()) out = "fiducial_d" + std::to_string(d) + ".json";
  sicpath::OptimizerConfig cfg;
  const sicpath::OptimizeReport rep = sicpath::minimize_frame_potential(d, seed, cfg, restarts);
  const double target = 2.0 / (d + 1);
  const double fp = sicpath::frame_potential(rep.v_final.normalized());
  const sicpath::ComplexVector canon = sicpath::canonical_gauge(rep.v_final).normalized();
  sicpath::save_vector(canon, out, "fiducial d=" + std::to_string(d),
                       "sicpath search, seed " + std::to_string(seed));
  write_manifest(out, "search",
                 {{"d", d}, {"restarts", restarts}, {"out", out}}, seed);
  std::printf("d=%d frame potential %.12f (bound %.12f, excess %.3e)\n", d, fp, target,
              rep.residual_norm);
  std::printf("wrote %s\n", out.c_str());
  if (!rep.converged) {
    std::fprintf(stderr, "search did not reach the bound: best potential %.12f, excess %.3e\n",
                 fp, rep.residual_norm);
    return kExitNoConverge;
  }
  return kExitOk;
}

int cmd_verify(const std::string& input, double tol) {
  const sicpath::FiducialRecord rec = sicpath::load_fiducial(input);
  const sicpath::ComplexVector& v = rec.v;
  const sicpath::AngleProfile p = sicpath::angles(v);
  const double n2 = v.norm_sq();
  const double balance = std::abs(p.alpha + rec.d * p.beta - n2 * n2);
  const sicpath::ResidualSystem sys(rec.d);
  const double rn = sys.residual_norm(sicpath::canonical_gauge(v));

  std::printf("d: %d\n", rec.d);
  std::printf("norm: %.12f\n", v.norm());
  std::printf("alpha: %.12f (spread %.3e)\n", p.alpha, p.alpha_spread);
  std::printf("beta: %.12f (spread %.3e)\n", p.beta, p.beta_spread);
  std::printf("delta: %.12f\n", p.beta - p.alpha);
  std::printf("frame potential: %.12f (bound %.12f)\n", sicpath::frame_potential(v),
              2.0 / (rec.d + 1));
  std::printf("residual norm: %.3e\n", rn);
  std::printf("angle balance defect: %.3e\n", balance);

  if (p.alpha_spread > tol || p.beta_spread > tol) {
    std::printf("none: not biangular at tolerance %.1e\n", tol);
    return kExitUnclassified;
  }
  if (std::abs(p.beta - p.alpha) <= tol) {
    std::printf("SIC: α=β=%.6f\n", p.alpha);
  } else if (std::abs(p.alpha) <= tol && std::abs(p.beta - 1.0 / rec.d) <= tol) {
    std::printf("MUB: (α,β)=(%.6f, %.6f)\n", p.alpha, p.beta);
  } else {
    std::printf("biangular: (α,β)=(%.6f, %.6f)\n", p.alpha, p.beta);
  }
  return kExitOk;
}

int cmd_traverse(int d, const std::string& input, int steps, double c, std::uint64_t seed,
                 bool reverse, std::string out, bool plot) {
  const sicpath::FiducialRecord rec = sicpath::load_fiducial(input);
  if (rec.d != d)
    throw sicpath::DimensionMismatch("--d is " + std::to_string(d) + " but " + input +
                                     " has d=" + std::to_string(rec.d));
  if (d == 3)
    std::fprintf(stderr,
                 "warning: d=3 runs are supported but uncalibrated; the sweep defaults are "
                 "tuned for d in {2,4,5}\n");
  if (out.empty()) out = "trajectory_d" + std::to_string(d) + ".csv";

  sicpath::TraversalConfig cfg;
  cfg.c = c;
  cfg.max_steps = steps;
  cfg.rng_seed = seed;
  cfg.reverse = reverse;
  const sicpath::ResidualSystem sys(d);
  const sicpath::Trajectory traj = sicpath::traverse(sys, sicpath::canonical_gauge(rec.v), cfg);
  sicpath::write_trajectory_csv(traj, out);
  write_manifest(out, "traverse",
                 {{"d", d},
                  {"input", input},
                  {"steps", steps},
                  {"c", c},
                  {"epsilon0", cfg.epsilon0},
                  {"reverse", reverse},
                  {"out", out},
                  {"plot", plot}},
                 seed);

  double max_res = 0.0;
  for (const auto& pt : traj.points) max_res = std::max(max_res, pt.residual_norm);
  std::printf("recorded %zu points to %s (max residual %.3e)\n", traj.points.size(), out.c_str(),
              max_res);
  const auto brackets = sicpath::detect_sign_changes(traj);
  if (brackets.empty()) {
    std::printf("no Delta sign changes\n");
  } else {
    std::printf("Delta sign changes:");
    for (const auto& b : brackets) std::printf(" (%d,%d)", b.first, b.second);
    std::printf("\n");
  }

  if (plot) {
    std::vector<std::array<double, 2>> v1_pts, angle_pts;
    v1_pts.reserve(traj.points.size());
    angle_pts.reserve(traj.points.size());
    for (const auto& pt : traj.points) {
      v1_pts.push_back({pt.v[1].real(), pt.v[1].imag()});
      angle_pts.push_back({pt.alpha, pt.beta});
    }
    std::filesystem::path base(out);
    base.replace_extension();
    const std::string v1_svg = base.string() + "_v1.svg";
    const std::string angles_svg = base.string() + "_angles.svg";
    write_svg_polyline(v1_svg, v1_pts, "Re v(1)", "Im v(1)");
    write_svg_polyline(angles_svg, angle_pts, "alpha", "beta");
    std::printf("wrote %s and %s\n", v1_svg.c_str(), angles_svg.c_str());
  }
  return kExitOk;
}

int cmd_refine(const std::string& traj_path, int lo, int hi, std::string out) {
  const sicpath::Trajectory traj = sicpath::read_trajectory_csv(traj_path);
  const int n = static_cast<int>(traj.points.size());
  if (lo < 0 || hi < 0 || lo >= n || hi >= n || lo == hi)
    throw sicpath::InvalidBracket("bracket (" + std::to_string(lo) + "," + std::to_string(hi) +
                                  ") is out of range for " + std::to_string(n) + " points");
  const sicpath::ResidualSystem sys(traj.d);
  const sicpath::OptimizerConfig cfg;
  const sicpath::VarietyPoint p_lo{traj.points[lo].v, traj.points[lo].residual_norm};
  const sicpath::VarietyPoint p_hi{traj.points[hi].v, traj.points[hi].residual_norm};
  const sicpath::VarietyPoint sic = sicpath::refine_sic(sys, p_lo, p_hi, cfg);

  const sicpath::ComplexVector unit = sicpath::canonical_gauge(sic.v).normalized();
  const sicpath::AngleProfile p = sicpath::angles(unit);
  if (out.empty()) out = "sic_d" + std::to_string(traj.d) + ".json";
  sicpath::save_vector(unit, out, "sic candidate d=" + std::to_string(traj.d),
                       "refined from " + traj_path + " bracket (" + std::to_string(lo) + "," +
                           std::to_string(hi) + ")");
  write_manifest(out, "refine",
                 {{"traj", traj_path}, {"bracket", {lo, hi}}, {"out", out}}, 0);
  std::printf("|α-β| = %.3e\n", std::abs(p.alpha - p.beta));
  std::printf("frame potential %.12f (bound %.12f)\n", sicpath::frame_potential(unit),
              2.0 / (traj.d + 1));
  std::printf("residual norm %.3e\n", sic.residual_norm);
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

int cmd_mub(int d, std::string out) {
  const sicpath::ComplexVector v = sicpath::alltop_mub(d);
  if (out.empty()) out = "mub_d" + std::to_string(d) + ".json";
  sicpath::save_vector(v, out, "alltop mub d=" + std::to_string(d),
                       "fourier transform of the cubic-phase alltop sequence");
  write_manifest(out, "mub", {{"d", d}, {"out", out}}, 0);
  const sicpath::AngleProfile p = sicpath::angles(v);
  std::printf("MUB: (α,β)=(%.6f, %.6f)\n", p.alpha, p.beta);
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

int cmd_circle(int samples, const std::string& branch, std::string out) {
  const int b = (branch == "-") ? -1 : +1;
  if (out.empty()) out = "circle.csv";
  const sicpath::ResidualSystem sys(2);
  sicpath::Trajectory traj{2, {}};
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / samples;
    const sicpath::ComplexVector v = sicpath::circle_family_d2(theta, b);
    const sicpath::AngleProfile p = sicpath::angles(v.normalized());
    traj.points.push_back({i, v, p.alpha, p.beta, sys.residual_norm(v)});
  }
  sicpath::write_trajectory_csv(traj, out);
  write_manifest(out, "circle", {{"samples", samples}, {"branch", branch}, {"out", out}}, 0);
  std::printf("wrote %d circle samples to %s\n", samples, out.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Gabor frame toolkit: fiducial search, biangular variety traversal, SIC refinement"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  int s_d = 2, s_restarts = 20;
  std::uint64_t s_seed = 1;
  std::string s_out;
  CLI::App* search = app.add_subcommand("search", "minimize the frame potential over C^d");
  search->add_option("--d", s_d, "dimension")->required()->check(CLI::Range(2, 1 << 20));
  search->add_option("--restarts", s_restarts, "number of random starts")
      ->check(CLI::Range(1, 1 << 20));
  search->add_option("--seed", s_seed, "rng seed (SICPATH_SEED overrides)");
  search->add_option("--out", s_out, "output fiducial json (default fiducial_d<d>.json)");

  std::string v_input;
  double v_tol = 1e-9;
  CLI::App* verify = app.add_subcommand("verify", "report and classify a stored vector");
  verify->add_option("--input", v_input, "fiducial json file")->required();
  verify->add_option("--tol", v_tol, "classification tolerance")->check(CLI::PositiveNumber);

  int t_d = 2, t_steps = 400;
  double t_c = 0.05;
  std::uint64_t t_seed = 1;
  bool t_reverse = false, t_plot = false;
  std::string t_input, t_out;
  CLI::App* traverse = app.add_subcommand("traverse", "continuation along the biangular variety");
  traverse->add_option("--d", t_d, "dimension")->required()->check(CLI::Range(2, 1 << 20));
  traverse->add_option("--input", t_input, "seed fiducial json file")->required();
  traverse->add_option("--steps", t_steps, "continuation steps")->check(CLI::Range(2, 1 << 24));
  traverse->add_option("--c", t_c, "extrapolation step length")->check(CLI::PositiveNumber);
  traverse->add_option("--seed", t_seed, "rng seed (SICPATH_SEED overrides)");
  traverse->add_flag("--reverse", t_reverse, "negate the initial perturbation");
  traverse->add_option("--out", t_out, "output csv (default trajectory_d<d>.csv)");
  traverse->add_flag("--plot", t_plot, "also write (Re v(1), Im v(1)) and (alpha, beta) svgs");

  std::string r_traj, r_out;
  std::vector<int> r_bracket;
  CLI::App* refine = app.add_subcommand("refine", "bisect a Delta sign change to a SIC");
  refine->add_option("--traj", r_traj, "trajectory csv file")->required();
  refine->add_option("--bracket", r_bracket, "two point indices with opposite Delta signs")
      ->required()
      ->expected(2);
  refine->add_option("--out", r_out, "output fiducial json (default sic_d<d>.json)");

  int m_d = 5;
  std::string m_out;
  CLI::App* mub = app.add_subcommand("mub", "write the Alltop Gabor MUB seed");
  mub->add_option("--d", m_d, "prime dimension >= 5")->required();
  mub->add_option("--out", m_out, "output fiducial json (default mub_d<d>.json)");

  int c_samples = 0;
  std::string c_branch = "+", c_out;
  CLI::App* circle = app.add_subcommand("circle", "sample the d=2 circle family");
  circle->add_option("--samples", c_samples, "number of theta samples")
      ->required()
      ->check(CLI::Range(1, 1 << 24));
  circle->add_option("--branch", c_branch, "circle branch")->check(CLI::IsMember({"+", "-"}));
  circle->add_option("--out", c_out, "output csv (default circle.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(search))
      return cmd_search(s_d, s_restarts, apply_seed_env(s_seed), s_out);
    if (app.got_subcommand(verify)) return cmd_verify(v_input, v_tol);
    if (app.got_subcommand(traverse))
      return cmd_traverse(t_d, t_input, t_steps, t_c, apply_seed_env(t_seed), t_reverse, t_out,
                          t_plot);
    if (app.got_subcommand(refine)) return cmd_refine(r_traj, r_bracket[0], r_bracket[1], r_out);
    if (app.got_subcommand(mub)) return cmd_mub(m_d, m_out);
    if (app.got_subcommand(circle)) return cmd_circle(c_samples, c_branch, c_out);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.msg.c_str());
    return kExitUsage;
  } catch (const sicpath::SeedOffVariety& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitOffVariety;
  } catch (const sicpath::InvalidBracket& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadBracket;
  } catch (const sicpath::ProjectionLost& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNoConverge;
  } catch (const sicpath::BadDimension& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const sicpath::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const sicpath::DimensionMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const sicpath::GaugeViolation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const sicpath::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitUsage;
}
