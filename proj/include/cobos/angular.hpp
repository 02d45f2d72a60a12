#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "cobos/quantum_numbers.hpp"

namespace cobos {

using cdouble = std::complex<double>;

/// Minimal dense complex matrix for the small angular/spin spaces
/// (dimension <= a few dozen).
struct CMatrix {
  int rows = 0, cols = 0;
  std::vector<cdouble> a;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, cdouble(0.0)) {}

  cdouble& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const cdouble& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static CMatrix identity(int n);
};

CMatrix operator*(const CMatrix& x, const CMatrix& y);
CMatrix operator+(const CMatrix& x, const CMatrix& y);
CMatrix operator-(const CMatrix& x, const CMatrix& y);
CMatrix operator*(cdouble s, const CMatrix& x);
CMatrix kron(const CMatrix& x, const CMatrix& y);
std::vector<cdouble> mat_vec(const CMatrix& m, const std::vector<cdouble>& v);
cdouble dot(const std::vector<cdouble>& x, const std::vector<cdouble>& y);  // <x|y>
cdouble expectation(const CMatrix& m, const std::vector<cdouble>& v);       // <v|M|v>

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int npts, std::vector<double>& nodes, std::vector<double>& weights);

/// Complex spherical harmonic Y_{lm}(theta, phi), Condon-Shortley phase.
cdouble sph_harm(int ell, int m, double theta, double phi);

/// Matrix <Y_{lp,m'} | f(theta,phi) | Y_{l,m}> by product quadrature
/// (Gauss-Legendre in cos(theta) x uniform in phi), exact for the
/// polynomial integrands met here.
CMatrix angular_matrix(int ell_prime, int ell,
                       const std::function<cdouble(double /*theta*/, double /*phi*/)>& f);

/// Exact angular-momentum matrices {lx, ly, lz} on |l m>, m = -l..l (hbar = 1).
std::array<CMatrix, 3> l_operators(int ell);

/// Nucleus/electron spin-1/2 operators on the product basis
/// |s_n s_e> in the order (uu, ud, du, dd); hbar = 1.
std::array<CMatrix, 3> spin_n_operators();
std::array<CMatrix, 3> spin_e_operators();

/// Total-spin eigenvector |S, m_S> in the same 4-dim basis.
std::vector<cdouble> chi_state(int S, int m_S);

/// Coefficient vector of the spinor wavefunction (Eq.-type three-term
/// Clebsch-Gordan superposition) on |l m> x |s_n s_e>, dimension (2l+1)*4.
/// Angular index runs fastest over spin: idx = (m + l)*4 + spin.
std::vector<cdouble> spinor_coefficients(const QuantumNumbers& beta);

}  // namespace cobos
