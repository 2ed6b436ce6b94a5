#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sicpath/constructions.hpp"
#include "sicpath/errors.hpp"
#include "sicpath/fiducial_io.hpp"
#include "sicpath/gabor.hpp"
#include "sicpath/rng.hpp"
#include "sicpath/variety.hpp"

using namespace sicpath;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("all_ones is unit norm with angles (1, 0)") {
  for (int d : {2, 3, 7}) {
    const ComplexVector v = all_ones(d);
    CHECK(std::abs(v.norm() - 1.0) < 1e-14);
    for (int j = 0; j < d; ++j) CHECK(std::abs(v[j] - cplx(1.0 / std::sqrt(d), 0)) < 1e-15);
    const AngleProfile p = angles(v);
    CHECK(p.alpha == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.beta == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(p.alpha_spread < 1e-13);
    CHECK(p.beta_spread < 1e-13);
  }
  CHECK_THROWS_AS(all_ones(1), BadDimension);
}

TEST_CASE("dft is unitary with F^4 = I") {
  ComplexVector e0 = ComplexVector::zeros(2);
  e0[0] = 1.0;
  const ComplexVector f = dft(e0);
  CHECK(std::abs(f[0] - cplx(1.0 / std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(f[1] - cplx(1.0 / std::sqrt(2.0), 0)) < 1e-15);

  Rng rng(31);
  for (int d : {2, 3, 5, 8}) {
    const ComplexVector v = rng.random_unit_vector(d);
    CHECK(std::abs(dft(v).norm() - v.norm()) < 1e-12);
    const ComplexVector v4 = dft(dft(dft(dft(v))));
    for (int j = 0; j < d; ++j) CHECK(std::abs(v4[j] - v[j]) < 1e-12);
  }
}

TEST_CASE("alltop_mub gives (0, 1/d)-biangular frames for prime d >= 5") {
  for (int d : {5, 7}) {
    const ComplexVector v = alltop_mub(d);
    CHECK(std::abs(v.norm() - 1.0) < 1e-13);
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        if (k == 0 && l == 0) continue;
        const double target = (l == 0) ? 0.0 : 1.0 / d;
        CHECK(std::abs(oracle::correlation(v, k, l) - target) < 1e-12);
      }
    }
  }
}

TEST_CASE("alltop_mub modulation classes are mutually unbiased orthonormal bases") {
  for (int d : {5, 7, 11}) {
    const ComplexVector v = alltop_mub(d);
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        const cplx g = inner_product(v, heisenberg(v, k, l));
        if (k == 0 && l == 0) {
          CHECK(std::abs(g - cplx(1, 0)) < 1e-12);
        } else if (l == 0) {
          CHECK(std::abs(g) < 1e-12);
        } else {
          CHECK(std::abs(std::norm(g) - 1.0 / d) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("alltop_mub rejects non-prime or small dimensions") {
  for (int d : {2, 3, 4, 6, 9, 15}) CHECK_THROWS_AS(alltop_mub(d), BadDimension);
  CHECK_NOTHROW(alltop_mub(13));
}

TEST_CASE("circle_family_d2 hits the named points") {
  const double r2 = std::sqrt(2.0);

  const ComplexVector mub = circle_family_d2(kPi / 2.0, +1);
  CHECK(std::abs(mub[0] - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(mub[1] - cplx(0.0, 1.0 + r2)) < 1e-14);
  const AngleProfile pm = angles(mub.normalized());
  CHECK(pm.alpha == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pm.beta == doctest::Approx(0.5).epsilon(1e-12));

  // x = y = (1 + sqrt(3))/2 solves both the circle equation and alpha = beta
  const double xy = (1.0 + std::sqrt(3.0)) / 2.0;
  const double theta = std::atan2((xy - 1.0) / r2, xy / r2);
  const ComplexVector sic = circle_family_d2(theta, +1);
  CHECK(std::abs(sic[1] - cplx(xy, xy)) < 1e-13);
  const AngleProfile ps = angles(sic.normalized());
  CHECK(ps.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(ps.beta == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const ComplexVector triv = circle_family_d2(-kPi / 4.0, +1);
  CHECK(std::abs(triv[1] - cplx(1, 0)) < 1e-14);
  const AngleProfile pt = angles(triv.normalized());
  CHECK(pt.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pt.beta == doctest::Approx(0.0).epsilon(1e-12));

  const ComplexVector mub_minus = circle_family_d2(-kPi / 2.0, -1);
  CHECK(std::abs(mub_minus[1] - cplx(0.0, -1.0 - r2)) < 1e-14);
}

TEST_CASE("circle_family_d2 stays on the variety on both branches") {
  const ResidualSystem sys(2);
  for (int branch : {+1, -1}) {
    for (int i = 0; i < 90; ++i) {
      const ComplexVector v = circle_family_d2(2.0 * kPi * i / 90.0, branch);
      CHECK(sys.residual_norm(v) < 1e-13);
      CHECK(oracle::circle_distance_d2(v[1].real(), v[1].imag()) < 1e-14);
    }
  }
}

TEST_CASE("save_vector and load_fiducial round-trip") {
  Rng rng(32);
  const ComplexVector v = rng.random_unit_vector(5);
  const std::string path = "scratch_unit/roundtrip.json";
  save_vector(v, path, "round trip", "unit test");
  const FiducialRecord rec = load_fiducial(path);
  CHECK(rec.d == 5);
  CHECK(rec.label == "round trip");
  CHECK(rec.source == "unit test");
  for (int j = 0; j < 5; ++j) CHECK(std::abs(rec.v[j] - v[j]) < 1e-15);
}

TEST_CASE("load_fiducial normalizes stored vectors") {
  const std::string path = "scratch_unit/unnormalized.json";
  {
    std::ofstream f(path);
    f << R"({"d": 2, "label": "", "source": "", "v": [[3.0, 0.0], [0.0, 4e0]]})";
  }
  const FiducialRecord rec = load_fiducial(path);
  CHECK(std::abs(rec.v.norm() - 1.0) < 1e-14);
  CHECK(std::abs(rec.v[0] - cplx(0.6, 0.0)) < 1e-14);
  CHECK(std::abs(rec.v[1] - cplx(0.0, 0.8)) < 1e-14);
}

TEST_CASE("load_fiducial rejects malformed files") {
  CHECK_THROWS_AS(load_fiducial("scratch_unit/does_not_exist.json"), ParseError);

  const auto write = [](const std::string& path, const std::string& body) {
    std::ofstream f(path);
    f << body;
  };
  write("scratch_unit/bad_syntax.json", "{ not json");
  CHECK_THROWS_AS(load_fiducial("scratch_unit/bad_syntax.json"), ParseError);

  write("scratch_unit/bad_count.json", R"({"d": 3, "v": [[1, 0], [0, 1]]})");
  CHECK_THROWS_AS(load_fiducial("scratch_unit/bad_count.json"), DimensionMismatch);

  write("scratch_unit/zero.json", R"({"d": 2, "v": [[0, 0], [0, 0]]})");
  CHECK_THROWS_AS(load_fiducial("scratch_unit/zero.json"), ParseError);

  write("scratch_unit/bad_pair.json", R"({"d": 2, "v": [[1, 0], [0]]})");
  CHECK_THROWS_AS(load_fiducial("scratch_unit/bad_pair.json"), ParseError);
}
