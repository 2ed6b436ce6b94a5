#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sicpath/constructions.hpp"
#include "sicpath/errors.hpp"
#include "sicpath/rng.hpp"
#include "sicpath/variety.hpp"

using namespace sicpath;

namespace {

ComplexVector gauge_vector_d2(double x, double y) {
  return ComplexVector({{1, 0}, {x, y}});
}

Eigen::VectorXd random_free(Rng& rng, int d) {
  Eigen::VectorXd x(2 * (d - 1));
  for (int i = 0; i < x.size(); ++i) x[i] = rng.gaussian();
  return x;
}

}  // namespace

TEST_CASE("residual counts follow (d-2) + (d^2-d-1)") {
  CHECK(ResidualSystem(2).num_residuals() == 1);
  CHECK(ResidualSystem(3).num_residuals() == 6);
  CHECK(ResidualSystem(4).num_residuals() == 13);
  CHECK(ResidualSystem(5).num_residuals() == 22);
  CHECK(ResidualSystem(8).num_residuals() == 61);
}

TEST_CASE("pack_free and unpack_free round-trip and pin the gauge") {
  Rng rng(21);
  const Eigen::VectorXd x = random_free(rng, 4);
  const ComplexVector v = unpack_free(x);
  CHECK(v[0] == cplx(1, 0));
  const Eigen::VectorXd y = pack_free(v);
  CHECK((x - y).norm() == 0.0);
  CHECK_THROWS_AS(pack_free(gauge_vector_d2(0.5, 0.0).normalized()), GaugeViolation);
}

TEST_CASE("the d=2 residual equals its closed form 4y^2 - (1 - x^2 - y^2)^2") {
  const ResidualSystem sys(2);
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = 3.0 * (2.0 * rng.uniform() - 1.0);
    const double y = 3.0 * (2.0 * rng.uniform() - 1.0);
    const Eigen::VectorXd r = sys.residuals(gauge_vector_d2(x, y));
    REQUIRE(r.size() == 1);
    const double s = x * x + y * y - 1.0;
    CHECK(r[0] == doctest::Approx(4.0 * y * y - s * s).epsilon(1e-12));
  }
}

TEST_CASE("circle family points satisfy the residual system") {
  const ResidualSystem sys(2);
  for (int branch : {+1, -1}) {
    for (int i = 0; i < 36; ++i) {
      const double theta = 2.0 * 3.14159265358979323846 * i / 36.0;
      CHECK(sys.residual_norm(circle_family_d2(theta, branch)) < 1e-13);
    }
  }
}

TEST_CASE("residuals vanish exactly on biangular constructions") {
  for (int d : {3, 5, 7}) {
    const ResidualSystem sys(d);
    CHECK(sys.residual_norm(canonical_gauge(all_ones(d))) < 1e-12);
  }
  for (int d : {5, 7}) {
    const ResidualSystem sys(d);
    CHECK(sys.residual_norm(canonical_gauge(alltop_mub(d))) < 1e-12);
  }
}

TEST_CASE("the standard basis vector is not on the variety") {
  // Its modulation-only correlations a[0][l] all equal ||v||^4 while every
  // translated correlation vanishes, so the beta class is maximally spread.
  for (int d : {2, 3, 5}) {
    ComplexVector e0 = ComplexVector::zeros(d);
    e0[0] = 1.0;
    CHECK(ResidualSystem(d).residual_norm(e0) > 0.5);
  }
}

TEST_CASE("analytic jacobian matches central finite differences") {
  Rng rng(23);
  for (int d : {2, 3, 4, 5}) {
    const ResidualSystem sys(d);
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::VectorXd x = random_free(rng, d);
      const Eigen::MatrixXd J = sys.jacobian_free(x);
      const Eigen::MatrixXd Jfd = oracle::central_fd_jacobian(
          [&](const Eigen::VectorXd& z) { return sys.residuals_free(z); }, x);
      CHECK((J - Jfd).norm() / std::max(1.0, J.norm()) < 1e-7);
    }
  }
}

TEST_CASE("correlation_entry_gradient matches finite differences in all 2d coordinates") {
  Rng rng(24);
  for (int d : {2, 4}) {
    ComplexVector v = rng.random_unit_vector(d);
    Eigen::VectorXd x(2 * d);
    for (int j = 0; j < d; ++j) {
      x[2 * j] = v[j].real();
      x[2 * j + 1] = v[j].imag();
    }
    const auto entry = [&](const Eigen::VectorXd& z, int k, int l) {
      std::vector<cplx> e(d);
      for (int j = 0; j < d; ++j) e[j] = {z[2 * j], z[2 * j + 1]};
      return correlation_table(ComplexVector(std::move(e)))(k, l);
    };
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        const Eigen::VectorXd g = correlation_entry_gradient(v, k, l);
        const Eigen::VectorXd gfd = oracle::central_fd_gradient(
            [&](const Eigen::VectorXd& z) { return entry(z, k, l); }, x);
        CHECK((g - gfd).norm() / std::max(1.0, g.norm()) < 1e-7);
      }
    }
  }
}

TEST_CASE("make_variety_point records the residual norm") {
  const ResidualSystem sys(2);
  const ComplexVector v = gauge_vector_d2(0.3, 1.1);
  const VarietyPoint p = make_variety_point(sys, v);
  CHECK(p.residual_norm == sys.residual_norm(v));
  CHECK(p.v[1] == v[1]);
}

TEST_CASE("delta is invariant under scaling and matches known seeds") {
  Rng rng(25);
  const ComplexVector v = rng.random_unit_vector(4);
  ComplexVector w = v;
  for (int j = 0; j < 4; ++j) w[j] *= cplx(0.0, 2.5);
  CHECK(delta(w) == doctest::Approx(delta(v)).epsilon(1e-12));
  CHECK(delta(all_ones(6)) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(delta(alltop_mub(5)) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("angle_balance_defect vanishes on biangular frames and rejects generic ones") {
  CHECK(angle_balance_defect(all_ones(3)) < 1e-12);
  CHECK(angle_balance_defect(alltop_mub(7)) < 1e-12);
  CHECK(angle_balance_defect(circle_family_d2(1.0, +1)) < 1e-9);
  Rng rng(26);
  CHECK_THROWS_AS(angle_balance_defect(rng.random_unit_vector(4)), NotBiangular);
}

TEST_CASE("canonical_gauge fixes v(0) = 1 and preserves the angle profile") {
  Rng rng(27);
  for (int d : {2, 5}) {
    const ComplexVector v = rng.random_unit_vector(d);
    const ComplexVector w = canonical_gauge(v);
    CHECK(w[0] == cplx(1, 0));
    const AngleProfile pv = angles(v);
    const AngleProfile pw = angles(w.normalized());
    CHECK(pw.alpha == doctest::Approx(pv.alpha).epsilon(1e-10));
    CHECK(pw.beta == doctest::Approx(pv.beta).epsilon(1e-10));
  }
  ComplexVector z = ComplexVector::zeros(3);
  CHECK_THROWS_AS(canonical_gauge(z), ZeroVector);
}

TEST_CASE("canonical_gauge pivots on the largest entry") {
  ComplexVector v = ComplexVector::zeros(3);
  v[0] = {0.1, 0.0};
  v[1] = {0.0, 2.0};
  v[2] = {0.3, 0.4};
  const ComplexVector w = canonical_gauge(v);
  CHECK(w[0] == cplx(1, 0));
  // pivot was v(1) = 2i, so w(j) = v(j+1) / v(1)
  CHECK(std::abs(w[1] - v[2] / v[1]) < 1e-15);
  CHECK(std::abs(w[2] - v[0] / v[1]) < 1e-15);
}
