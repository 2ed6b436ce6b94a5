#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "sicpath/complex_vector.hpp"

namespace sicpath {

// Seeded generator for reproducible experiments.  Gaussians come from a
// hand-rolled Box-Muller transform on top of mt19937_64 so that identical
// seeds give identical streams on every platform (std::normal_distribution
// is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    // 53-bit mantissa in [0,1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double twopi = 2.0 * 3.14159265358979323846;
    spare_ = r * std::sin(twopi * u2);
    have_spare_ = true;
    return r * std::cos(twopi * u2);
  }

  cplx complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  ComplexVector random_unit_vector(int d) {
    std::vector<cplx> e(d);
    for (cplx& z : e) z = complex_gaussian();
    return ComplexVector(std::move(e)).normalized();
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sicpath
