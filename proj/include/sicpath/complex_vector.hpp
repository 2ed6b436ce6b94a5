#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "sicpath/errors.hpp"

namespace sicpath {

using cplx = std::complex<double>;

// A vector in C^d indexed by Z_d.  Construction enforces d >= 2 and finite
// components; index arguments to the frame operators are reduced mod d.
class ComplexVector {
 public:
  explicit ComplexVector(std::vector<cplx> entries) : e_(std::move(entries)) {
    if (e_.size() < 2) throw BadDimension("ComplexVector requires d >= 2");
    for (const cplx& z : e_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error("ComplexVector entry is not finite");
    }
  }

  static ComplexVector zeros(int d) { return ComplexVector(std::vector<cplx>(d)); }

  int dim() const { return static_cast<int>(e_.size()); }
  const cplx& operator[](int j) const { return e_[j]; }
  cplx& operator[](int j) { return e_[j]; }
  const std::vector<cplx>& entries() const { return e_; }

  double norm_sq() const {
    double s = 0.0;
    for (const cplx& z : e_) s += std::norm(z);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  ComplexVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw ZeroVector();
    std::vector<cplx> out(e_);
    for (cplx& z : out) z /= n;
    return ComplexVector(std::move(out));
  }

 private:
  std::vector<cplx> e_;
};

inline double distance(const ComplexVector& a, const ComplexVector& b) {
  double s = 0.0;
  for (int j = 0; j < a.dim(); ++j) s += std::norm(a[j] - b[j]);
  return std::sqrt(s);
}

}  // namespace sicpath
