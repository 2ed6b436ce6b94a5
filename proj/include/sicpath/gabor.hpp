#pragma once

#include <vector>

#include "sicpath/complex_vector.hpp"

namespace sicpath {

// Translation, modulation, and correlation structure of Gabor frames over Z_d.
//
// Conventions, fixed project-wide:
//   (T v)(j) = v(j-1),   (M v)(j) = w^j v(j)   with w = exp(2 pi i / d),
//   <x, y>   = sum_j x(j) conj(y(j))           (conjugate-linear in y).
// The d-th roots of unity are tabulated once per dimension; every module
// draws phases from the same table so correlation symmetries hold to 1e-12.

// w^j for j = 0..d-1.
const std::vector<cplx>& omega_table(int d);

// (T^k v)(j) = v(j-k), k reduced mod d.
ComplexVector translate(const ComplexVector& v, int k);

// (M^l v)(j) = w^(j l) v(j), l reduced mod d.
ComplexVector modulate(const ComplexVector& v, int l);

// M^l T^k v, the (k,l) element of the Gabor system G(v).
ComplexVector heisenberg(const ComplexVector& v, int k, int l);

cplx inner_product(const ComplexVector& x, const ComplexVector& y);

// Squared correlation magnitudes a[k][l] = |<v, M^l T^k v>|^2.
struct CorrelationTable {
  int d;
  std::vector<double> a;  // row-major, a[k*d + l]

  double operator()(int k, int l) const { return a[k * d + l]; }
};

CorrelationTable correlation_table(const ComplexVector& v);

// Correlation inner products c[k][l] = <v, M^l T^k v> (row-major), the
// complex values whose squared magnitudes fill the correlation table.
std::vector<cplx> correlation_entries(const ComplexVector& v);

// Summary of a correlation table under the biangular partition: the
// translation-only class {a[k][0] : k != 0} and the modulated class
// {a[k][l] : l != 0}.  Means and max-min spreads, so biangularity is the
// predicate "spreads <= tol" rather than exact equality.
struct AngleProfile {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_spread = 0.0;
  double beta_spread = 0.0;
};

AngleProfile angles(const ComplexVector& v);

// (1/d) sum_{k,l} a[k][l]^2 for unit-norm v; bounded below by 2/(d+1) with
// equality exactly at fiducial vectors.  Throws NotUnitNorm if the caller
// did not normalize (tolerance 1e-12 on | ||v|| - 1 |).
double frame_potential(const ComplexVector& v);

// Same quartic sum without the unit-norm requirement; used by optimization
// and derivative checks, where probe points are off the sphere.
double frame_potential_raw(const ComplexVector& v);

// | sum_{k,l} |<x, M^l T^k v>|^2 - d ||v||^2 ||x||^2 |.  Zero in exact
// arithmetic for every x: the Gabor system is always a tight frame.
double tightness_defect(const ComplexVector& v, const ComplexVector& x);

}  // namespace sicpath
