#pragma once

#include "sicpath/complex_vector.hpp"

namespace sicpath {

// Closed-form seed vectors with known angle structure.

// The normalized all-ones vector 1/sqrt(d); G of it is (1,0)-biangular.
ComplexVector all_ones(int d);

// Unitary discrete Fourier transform, (F v)(j) = d^{-1/2} sum_t w^{-jt} v(t).
ComplexVector dft(const ComplexVector& v);

// Fourier transform of the Alltop sequence f(t) = d^{-1/2} exp(2 pi i t^3 / d),
// defined for prime d >= 5; generates a (0, 1/d)-biangular Gabor frame whose
// modulation classes are d mutually unbiased orthonormal bases.
ComplexVector alltop_mub(int d);

// The d = 2 slice of the gauge-fixed variety in closed form: the set of
// (1, x + y i) with x^2 + (y -+ 1)^2 = 2, a union of two circles of radius
// sqrt(2) centered at (0, +-1).  branch = +1 selects the circle through the
// Gabor MUB point (0, 1 + sqrt(2)).
ComplexVector circle_family_d2(double theta, int branch);

}  // namespace sicpath
