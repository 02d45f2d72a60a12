#include "cobos/radial.hpp"

#include <cmath>
#include <stdexcept>

#include "cobos/quadrature.hpp"

namespace cobos {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Generalized Laguerre L_k^{(a)}(x) by upward recurrence (stable for the
// small k used here).
double laguerre(int k, int a, double x) {
  if (k < 0) return 0.0;
  if (k == 0) return 1.0;
  double lkm1 = 1.0;
  double lk = 1.0 + a - x;
  for (int i = 1; i < k; ++i) {
    const double lkp1 = ((2.0 * i + 1.0 + a - x) * lk - (i + a) * lkm1) / (i + 1.0);
    lkm1 = lk;
    lk = lkp1;
  }
  return lk;
}

// dL_k^{(a)}/dx = -L_{k-1}^{(a+1)}
double laguerre_d1(int k, int a, double x) { return k >= 1 ? -laguerre(k - 1, a + 1, x) : 0.0; }
double laguerre_d2(int k, int a, double x) { return k >= 2 ? laguerre(k - 2, a + 2, x) : 0.0; }

}  // namespace

RadialFunction::RadialFunction(const Species& species, int n, int ell) : n_(n), ell_(ell) {
  if (n < 1) throw std::domain_error("RadialFunction: n must be >= 1");
  if (ell < 0 || ell > n - 1) throw std::domain_error("RadialFunction: need 0 <= l <= n-1");
  a_Z_ = species.bohr_length();
  scale_ = 2.0 / (n * a_Z_);
  // sqrt( (2/(n a))^3 (n-l-1)! / (2n (n+l)!) )
  const double logfac = std::lgamma(n - ell) - std::lgamma(n + ell + 1);
  norm_ = std::sqrt(scale_ * scale_ * scale_ * std::exp(logfac) / (2.0 * n));
}

double RadialFunction::value(double r) const {
  const double x = scale_ * r;
  const int k = n_ - ell_ - 1;
  return norm_ * std::pow(x, ell_) * std::exp(-0.5 * x) * laguerre(k, 2 * ell_ + 1, x);
}

double RadialFunction::d1(double r) const {
  const double x = scale_ * r;
  const int k = n_ - ell_ - 1;
  const int a = 2 * ell_ + 1;
  const double L = laguerre(k, a, x);
  const double Lp = laguerre_d1(k, a, x);
  const double xl = std::pow(x, ell_);
  double g = xl * (Lp - 0.5 * L);
  if (ell_ > 0) g += ell_ * std::pow(x, ell_ - 1) * L;
  return norm_ * scale_ * std::exp(-0.5 * x) * g;
}

double RadialFunction::d2(double r) const {
  const double x = scale_ * r;
  const int k = n_ - ell_ - 1;
  const int a = 2 * ell_ + 1;
  const double L = laguerre(k, a, x);
  const double Lp = laguerre_d1(k, a, x);
  const double Lpp = laguerre_d2(k, a, x);
  const double xl = std::pow(x, ell_);
  // d^2/dx^2 [x^l e^{-x/2} L] expanded by product rule
  double g = xl * (Lpp - Lp + 0.25 * L);
  if (ell_ > 0) g += 2.0 * ell_ * std::pow(x, ell_ - 1) * (Lp - 0.5 * L);
  if (ell_ > 1) g += ell_ * (ell_ - 1) * std::pow(x, ell_ - 2) * L;
  return norm_ * scale_ * scale_ * std::exp(-0.5 * x) * g;
}

double RadialFunction::value_at_origin() const {
  if (ell_ != 0) return 0.0;
  return norm_ * laguerre(n_ - 1, 1, 0.0);  // L_k^{(1)}(0) = k+1 = n
}

double RadialFunction::p2(double r) const {
  double out = -d2(r) - 2.0 * d1(r) / r;
  if (ell_ > 0) out += ell_ * (ell_ + 1.0) * value(r) / (r * r);
  return out;
}

int RadialFunction::count_nodes(int grid_points) const {
  int nodes = 0;
  double prev = 0.0;
  bool have_prev = false;
  const double rmax = r_max();
  for (int i = 1; i <= grid_points; ++i) {
    const double r = rmax * i / static_cast<double>(grid_points + 1);
    const double v = value(r);
    if (std::abs(v) < 1e-300) continue;
    if (have_prev && v * prev < 0.0) ++nodes;
    prev = v;
    have_prev = true;
  }
  return nodes;
}

double radial_expectation_quadrature(const Species& species, int n, int ell, int k) {
  const RadialFunction R(species, n, ell);
  const auto f = [&](double r) { return R.value(r) * R.value(r) * std::pow(r, k + 2); };
  // The k = -3 integrand behaves like r^{2l-1} at the origin: integrable
  // only for l >= 1, which the caller guards.
  return integrate(f, 0.0, R.r_max(), 1e-13, 1e-30);
}

double radial_expectation(const Species& species, int n, int ell, int k) {
  if (k < -3) throw std::domain_error("radial_expectation: k < -3 not supported");
  if (k == -3 && ell == 0)
    throw std::domain_error("radial_expectation: <1/r^3> diverges for l = 0");
  const double zm = species.Z * species.m_r;  // 1/a_Z
  const double nn = n;
  const double l = ell;
  switch (k) {
    case 0:
      return 1.0;
    case -1:
      return zm / (nn * nn);
    case -2:
      return zm * zm / (nn * nn * nn * (l + 0.5));
    case -3:
      return zm * zm * zm / (nn * nn * nn * l * (l + 0.5) * (l + 1.0));
    default:
      return radial_expectation_quadrature(species, n, ell, k);
  }
}

double density_at_origin(const Species& species, int n, int ell) {
  if (ell != 0) return 0.0;
  const RadialFunction R(species, n, 0);
  const double r0 = R.value_at_origin();
  return r0 * r0 / (4.0 * kPi);
}

}  // namespace cobos
