#include "sicpath/gabor.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "sicpath/errors.hpp"

namespace sicpath {

namespace {
constexpr double kPi = 3.14159265358979323846;

int mod(int a, int d) {
  int r = a % d;
  return r < 0 ? r + d : r;
}
}  // namespace

const std::vector<cplx>& omega_table(int d) {
  static std::mutex mu;
  static std::map<int, std::vector<cplx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it == cache.end()) {
    std::vector<cplx> t(d);
    for (int j = 0; j < d; ++j) t[j] = std::polar(1.0, 2.0 * kPi * j / d);
    it = cache.emplace(d, std::move(t)).first;
  }
  return it->second;
}

ComplexVector translate(const ComplexVector& v, int k) {
  const int d = v.dim();
  k = mod(k, d);
  std::vector<cplx> w(d);
  for (int j = 0; j < d; ++j) w[j] = v[mod(j - k, d)];
  return ComplexVector(std::move(w));
}

ComplexVector modulate(const ComplexVector& v, int l) {
  const int d = v.dim();
  l = mod(l, d);
  const auto& om = omega_table(d);
  std::vector<cplx> w(d);
  for (int j = 0; j < d; ++j) w[j] = om[(j * l) % d] * v[j];
  return ComplexVector(std::move(w));
}

ComplexVector heisenberg(const ComplexVector& v, int k, int l) {
  return modulate(translate(v, k), l);
}

cplx inner_product(const ComplexVector& x, const ComplexVector& y) {
  cplx s = 0.0;
  for (int j = 0; j < x.dim(); ++j) s += x[j] * std::conj(y[j]);
  return s;
}

std::vector<cplx> correlation_entries(const ComplexVector& v) {
  const int d = v.dim();
  const auto& om = omega_table(d);
  std::vector<cplx> c(d * d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      // <v, M^l T^k v> = sum_j v(j) conj(w^(jl)) conj(v(j-k))
      cplx s = 0.0;
      for (int j = 0; j < d; ++j)
        s += v[j] * std::conj(om[(j * l) % d] * v[mod(j - k, d)]);
      c[k * d + l] = s;
    }
  }
  return c;
}

CorrelationTable correlation_table(const ComplexVector& v) {
  if (v.norm_sq() == 0.0) throw ZeroVector("correlation_table of zero vector");
  const int d = v.dim();
  const std::vector<cplx> c = correlation_entries(v);
  CorrelationTable t{d, std::vector<double>(d * d)};
  for (int i = 0; i < d * d; ++i) t.a[i] = std::norm(c[i]);
  return t;
}

AngleProfile angles(const ComplexVector& v) {
  const int d = v.dim();
  const CorrelationTable t = correlation_table(v);
  AngleProfile p;
  double amin = 0.0, amax = 0.0, asum = 0.0;
  for (int k = 1; k < d; ++k) {
    const double x = t(k, 0);
    if (k == 1 || x < amin) amin = x;
    if (k == 1 || x > amax) amax = x;
    asum += x;
  }
  double bmin = 0.0, bmax = 0.0, bsum = 0.0;
  bool first = true;
  for (int k = 0; k < d; ++k) {
    for (int l = 1; l < d; ++l) {
      const double x = t(k, l);
      if (first || x < bmin) bmin = x;
      if (first || x > bmax) bmax = x;
      bsum += x;
      first = false;
    }
  }
  p.alpha = asum / (d - 1);
  p.alpha_spread = amax - amin;
  p.beta = bsum / (d * (d - 1));
  p.beta_spread = bmax - bmin;
  return p;
}

double frame_potential_raw(const ComplexVector& v) {
  const CorrelationTable t = correlation_table(v);
  double s = 0.0;
  for (double x : t.a) s += x * x;
  return s / v.dim();
}

double frame_potential(const ComplexVector& v) {
  const double n = v.norm();
  if (std::abs(n - 1.0) > 1e-12)
    throw NotUnitNorm("frame_potential requires ||v|| = 1, got " + std::to_string(n));
  return frame_potential_raw(v);
}

double tightness_defect(const ComplexVector& v, const ComplexVector& x) {
  if (v.norm_sq() == 0.0) throw ZeroVector("tightness_defect of zero vector");
  const int d = v.dim();
  double s = 0.0;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) s += std::norm(inner_product(x, heisenberg(v, k, l)));
  return std::abs(s - d * v.norm_sq() * x.norm_sq());
}

}  // namespace sicpath
