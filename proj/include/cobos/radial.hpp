#pragma once

#include "cobos/constants.hpp"

namespace cobos {

/// Hydrogenlike radial function R_{nl}(r) for the relative motion, in the
/// reduced Bohr length a_Z = 1/(Z m_r). Normalized so that
/// integral R^2 r^2 dr = 1. Standard infinite-domain wavefunctions; the
/// hard-sphere cutoff of the underlying model is exponentially irrelevant
/// at the radii probed here.
class RadialFunction {
 public:
  RadialFunction(const Species& species, int n, int ell);

  double operator()(double r) const { return value(r); }
  double value(double r) const;
  double d1(double r) const;  // dR/dr
  double d2(double r) const;  // d^2R/dr^2

  /// R(0); nonzero only for l = 0.
  double value_at_origin() const;

  /// Radial part of p^2 psi: -R'' - 2 R'/r + l(l+1) R/r^2.
  double p2(double r) const;

  int n() const { return n_; }
  int ell() const { return ell_; }
  double a_Z() const { return a_Z_; }
  /// Quadrature cutoff 40 n^2 a_Z (density beyond is ~e^{-80 n}).
  double r_max() const { return 40.0 * n_ * n_ * a_Z_; }

  /// Number of strict sign changes on (0, r_max); equals n - l - 1.
  int count_nodes(int grid_points = 20000) const;

 private:
  int n_, ell_;
  double a_Z_;
  double scale_;  // 2/(n a_Z)
  double norm_;
};

/// Expectation value <r^k>_{nl} in atomic units. Closed form for
/// k in {-3, -2, -1, 0}, adaptive quadrature otherwise; both routes agree to
/// 1e-10 (tested). Throws std::domain_error for the divergent (k=-3, l=0)
/// case and for k < -3.
double radial_expectation(const Species& species, int n, int ell, int k);

/// Same but forcing the quadrature path (cross-check of the closed forms).
double radial_expectation_quadrature(const Species& species, int n, int ell, int k);

/// |psi(0)|^2 = (Z m_r)^3/(pi n^3) delta_{l,0}: the only sane way to feed
/// delta^3(r) matrix elements.
double density_at_origin(const Species& species, int n, int ell);

}  // namespace cobos
