#pragma once

#include <array>
#include <complex>

#include "cobos/angular.hpp"
#include "cobos/constants.hpp"
#include "cobos/quantum_numbers.hpp"
#include "cobos/wilson.hpp"

namespace cobos {

/// Per-term breakdown of <beta| h^(1)_rel |beta>, evaluated without the
/// closed-form energy shift: radial pieces by adaptive quadrature, delta
/// terms analytically through |psi(0)|^2, spin/angular factors through
/// exact operator matrices on the |l m> x |s_n s_e> product basis.
struct OracleBreakdown {
  double kinetic = 0.0;       // p^4 correction via <p^4> = 4 m_r^2 <(E-V)^2>
  double kinetic_alt = 0.0;   // same via direct |p^2 psi|^2 quadrature
  double orbit_bare = 0.0;    // -kappa <(l^2/2 + (r.p)^2)/r^3>, operator as written
  double orbit_counterterm = 0.0;  // -kappa pi |psi(0)|^2 (s states); see docs/numerics.md
  double darwin = 0.0;
  double contact = 0.0;       // spin-spin delta term
  double spin_orbit_total = 0.0;   // alpha_lS (l.S)/r^3
  double spin_orbit_rel = 0.0;     // alpha_ls (l.s)/r^3
  double spin_dipole = 0.0;        // cF_e cF_n S_ne/r^3
  double total = 0.0;
  /// Relative difference between the direct quadrature of <(1/r^3)(r.p)^2>
  /// and its integrated-by-parts form (the ordering's self-consistency).
  double hermiticity_defect = 0.0;
};

OracleBreakdown energy1_oracle_breakdown(const Species& s, const WilsonCoefficients& w,
                                         const QuantumNumbers& beta, double c);

/// <beta| h^(1)_rel |beta> in hartree with the pinned speed of light.
double energy1_oracle(const Species& s, const WilsonCoefficients& w, const QuantumNumbers& beta);
double energy1_oracle_with_c(const Species& s, const WilsonCoefficients& w,
                             const QuantumNumbers& beta, double c);

/// Full spinor overlap <beta|beta'> (radial quadrature x exact spin-angular
/// coefficient dot product).
cdouble spinor_overlap(const Species& s, const QuantumNumbers& b1, const QuantumNumbers& b2);

/// Residual norms ||(O - lambda) |beta>|| for O in {l^2, S^2, J^2, J_z}.
struct SpinorEigenResiduals {
  double l2 = 0.0, s2 = 0.0, j2 = 0.0, jz = 0.0;
};
SpinorEigenResiduals spinor_eigen_residuals(const QuantumNumbers& beta);

/// <beta| d |beta'> with d = m_r (q_e/m_e - q_n/m_n) r; selection rules are
/// not imposed, they emerge from the quadratures.
std::array<cdouble, 3> transition_dipole(const Species& s, const QuantumNumbers& beta,
                                         const QuantumNumbers& beta_prime);

/// Discrete second-order sum over np x n'p pair states of the dipole-dipole
/// term; monotone nondecreasing in n_basis, a lower bound on the full C6.
double c6_sum_over_states(const Species& s, int n_basis);

/// |<p^2/(2 m_r)> + <V> - E_n^(0)| by quadrature.
double hypervirial_residual(const Species& s, int n, int ell);

}  // namespace cobos
