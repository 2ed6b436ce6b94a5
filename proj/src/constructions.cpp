#include "sicpath/constructions.hpp"

#include <cmath>

#include "sicpath/errors.hpp"
#include "sicpath/gabor.hpp"

namespace sicpath {

namespace {
bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}
}  // namespace

ComplexVector all_ones(int d) {
  if (d < 2) throw BadDimension("all_ones requires d >= 2");
  return ComplexVector(std::vector<cplx>(d, cplx(1.0 / std::sqrt(d), 0.0)));
}

ComplexVector dft(const ComplexVector& v) {
  const int d = v.dim();
  const auto& om = omega_table(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<cplx> w(d);
  for (int j = 0; j < d; ++j) {
    cplx s = 0.0;
    for (int t = 0; t < d; ++t) s += std::conj(om[(j * t) % d]) * v[t];
    w[j] = scale * s;
  }
  return ComplexVector(std::move(w));
}

ComplexVector alltop_mub(int d) {
  if (d < 5 || !is_prime(d))
    throw BadDimension("alltop_mub requires prime d >= 5, got " + std::to_string(d));
  constexpr double kPi = 3.14159265358979323846;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<cplx> f(d);
  for (int t = 0; t < d; ++t) {
    // t^3 mod d keeps the phase argument small
    const long long t3 = (static_cast<long long>(t) * t % d) * t % d;
    f[t] = scale * std::polar(1.0, 2.0 * kPi * static_cast<double>(t3) / d);
  }
  return dft(ComplexVector(std::move(f)));
}

ComplexVector circle_family_d2(double theta, int branch) {
  const double r = std::sqrt(2.0);
  const double x = r * std::cos(theta);
  const double y = (branch >= 0 ? 1.0 : -1.0) + r * std::sin(theta);
  return ComplexVector({cplx(1.0, 0.0), cplx(x, y)});
}

}  // namespace sicpath
