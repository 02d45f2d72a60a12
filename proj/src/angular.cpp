#include "cobos/angular.hpp"

#include <cmath>
#include <stdexcept>

#include "cobos/spectrum.hpp"

namespace cobos {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMatrix operator*(const CMatrix& x, const CMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("CMatrix: shape mismatch in product");
  CMatrix out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const cdouble v = x.at(i, k);
      if (v == cdouble(0.0)) continue;
      for (int j = 0; j < y.cols; ++j) out.at(i, j) += v * y.at(k, j);
    }
  return out;
}

CMatrix operator+(const CMatrix& x, const CMatrix& y) {
  CMatrix out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
  return out;
}

CMatrix operator-(const CMatrix& x, const CMatrix& y) {
  CMatrix out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] -= y.a[i];
  return out;
}

CMatrix operator*(cdouble s, const CMatrix& x) {
  CMatrix out = x;
  for (auto& v : out.a) v *= s;
  return out;
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
  CMatrix out(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      const cdouble v = x.at(i, j);
      if (v == cdouble(0.0)) continue;
      for (int p = 0; p < y.rows; ++p)
        for (int q = 0; q < y.cols; ++q) out.at(i * y.rows + p, j * y.cols + q) = v * y.at(p, q);
    }
  return out;
}

std::vector<cdouble> mat_vec(const CMatrix& m, const std::vector<cdouble>& v) {
  if (m.cols != static_cast<int>(v.size())) throw std::invalid_argument("CMatrix: mat_vec shape");
  std::vector<cdouble> out(m.rows, cdouble(0.0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

cdouble dot(const std::vector<cdouble>& x, const std::vector<cdouble>& y) {
  cdouble s(0.0);
  for (size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

cdouble expectation(const CMatrix& m, const std::vector<cdouble>& v) { return dot(v, mat_vec(m, v)); }

void gauss_legendre(int npts, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(npts, 0.0);
  weights.assign(npts, 0.0);
  for (int i = 0; i < (npts + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (npts + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= npts; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = npts * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[npts - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[npts - 1 - i] = w;
  }
}

cdouble sph_harm(int ell, int m, double theta, double phi) {
  const int am = std::abs(m);
  if (am > ell) return 0.0;
  const double x = std::cos(theta);
  // std::assoc_legendre carries no Condon-Shortley phase; add it here.
  const double plm = std::assoc_legendre(ell, am, x);
  const double lognorm =
      0.5 * (std::log(2.0 * ell + 1.0) - std::log(4.0 * kPi) + std::lgamma(ell - am + 1.0) -
             std::lgamma(ell + am + 1.0));
  double mag = std::exp(lognorm) * plm;
  if (am % 2 == 1) mag = -mag;  // Condon-Shortley
  cdouble y = mag * std::exp(cdouble(0.0, am * phi));
  if (m < 0) {
    y = std::conj(y);
    if (am % 2 == 1) y = -y;
  }
  return y;
}

CMatrix angular_matrix(int ell_prime, int ell, const std::function<cdouble(double, double)>& f) {
  const int rows = 2 * ell_prime + 1;
  const int cols = 2 * ell + 1;
  // Integrands are polynomials of degree <= l + l' + 2 in the direction
  // cosines; these orders make the product rule exact.
  const int ntheta = ell + ell_prime + 8;
  const int nphi = 2 * (ell + ell_prime) + 8;
  std::vector<double> xs, ws;
  gauss_legendre(ntheta, xs, ws);
  CMatrix out(rows, cols);
  for (int it = 0; it < ntheta; ++it) {
    const double theta = std::acos(xs[it]);
    for (int ip = 0; ip < nphi; ++ip) {
      const double phi = 2.0 * kPi * ip / nphi;
      const double w = ws[it] * (2.0 * kPi / nphi);
      const cdouble fv = f(theta, phi);
      if (fv == cdouble(0.0)) continue;
      for (int mp = -ell_prime; mp <= ell_prime; ++mp) {
        const cdouble yp = std::conj(sph_harm(ell_prime, mp, theta, phi));
        for (int m = -ell; m <= ell; ++m) {
          out.at(mp + ell_prime, m + ell) += w * yp * fv * sph_harm(ell, m, theta, phi);
        }
      }
    }
  }
  return out;
}

std::array<CMatrix, 3> l_operators(int ell) {
  const int dim = 2 * ell + 1;
  CMatrix lz(dim, dim), lp(dim, dim), lm(dim, dim);
  for (int m = -ell; m <= ell; ++m) lz.at(m + ell, m + ell) = static_cast<double>(m);
  for (int m = -ell; m < ell; ++m) {
    const double amp = std::sqrt(static_cast<double>(ell * (ell + 1) - m * (m + 1)));
    lp.at(m + 1 + ell, m + ell) = amp;  // l+ |l m> = amp |l m+1>
    lm.at(m + ell, m + 1 + ell) = amp;
  }
  CMatrix lx = 0.5 * (lp + lm);
  CMatrix ly = cdouble(0.0, -0.5) * (lp - lm);
  return {lx, ly, lz};
}

namespace {

std::array<CMatrix, 3> pauli_half() {
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx.at(0, 1) = 0.5;
  sx.at(1, 0) = 0.5;
  sy.at(0, 1) = cdouble(0.0, -0.5);
  sy.at(1, 0) = cdouble(0.0, 0.5);
  sz.at(0, 0) = 0.5;
  sz.at(1, 1) = -0.5;
  return {sx, sy, sz};
}

}  // namespace

std::array<CMatrix, 3> spin_n_operators() {
  const auto s = pauli_half();
  const CMatrix id = CMatrix::identity(2);
  return {kron(s[0], id), kron(s[1], id), kron(s[2], id)};
}

std::array<CMatrix, 3> spin_e_operators() {
  const auto s = pauli_half();
  const CMatrix id = CMatrix::identity(2);
  return {kron(id, s[0]), kron(id, s[1]), kron(id, s[2])};
}

std::vector<cdouble> chi_state(int S, int m_S) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<cdouble> v(4, cdouble(0.0));
  if (S == 1 && m_S == 1) v[0] = 1.0;
  else if (S == 1 && m_S == 0) { v[1] = inv_sqrt2; v[2] = inv_sqrt2; }
  else if (S == 1 && m_S == -1) v[3] = 1.0;
  else if (S == 0 && m_S == 0) { v[1] = inv_sqrt2; v[2] = -inv_sqrt2; }
  else throw std::domain_error("chi_state: invalid (S, m_S)");
  return v;
}

std::vector<cdouble> spinor_coefficients(const QuantumNumbers& beta) {
  validate(beta);
  const int dim = (2 * beta.ell + 1) * 4;
  std::vector<cdouble> v(dim, cdouble(0.0));
  for (int mS = -1; mS <= 1; ++mS) {
    if (beta.S == 0 && mS != 0) continue;
    const double cg = clebsch_gordan(beta.j, beta.S, mS, beta.ell, beta.m_j);
    if (cg == 0.0) continue;
    const int m = beta.m_j - mS;
    if (std::abs(m) > beta.ell) continue;
    const auto chi = chi_state(beta.S, mS);
    for (int sp = 0; sp < 4; ++sp) v[(m + beta.ell) * 4 + sp] += cg * chi[sp];
  }
  return v;
}

}  // namespace cobos
