#pragma once

#include <vector>

#include "cobos/constants.hpp"
#include "cobos/quantum_numbers.hpp"
#include "cobos/wilson.hpp"

namespace cobos {

/// Clebsch-Gordan coefficient alpha_{j,S,m_S} coupling |l, m_j - m_S> x
/// |S, m_S> into |(l S) j m_j>. Row selected by (j - l, S); returns 0
/// outside the table's support (e.g. |m_j - m_S| > l). Throws
/// std::domain_error for an invalid (j, S, l) row.
double clebsch_gordan(int j, int S, int m_S, int ell, int m_j);

/// Unperturbed bound-state energy E_n^(0) = -m_r (Z alpha c)^2 / (2 n^2),
/// i.e. -m_r Z^2/(2 n^2) hartree. Throws std::domain_error for n < 1.
double energy0(const Species& s, int n);

/// Spin-structure coefficient C_{j,l} (S = 1, l >= 1):
///   j = l+1:  l/(2l+3) [ 2(2l+3)(alpha_lS + dm/(2M) alpha_ls) - cF_e cF_n ]
///   j = l  : -2 (alpha_lS + dm/(2M) alpha_ls) + cF_e cF_n
///   j = l-1: -(l+1)/(2l-1) [ 2(2l-1)(alpha_lS + dm/(2M) alpha_ls) + cF_e cF_n ]
/// Throws std::domain_error for l = 0 or a non-triplet (j, l) pair.
double c_jl(const WilsonCoefficients& w, const Species& s, int j, int ell);

/// First-order internal energy shift E^(1)_beta in hartree:
///   prefactor m_r^2 c^2 (Z alpha)^4 / M  times
///   { kinetic + orbit + (alpha_D - 3/4 alpha_ss + alpha_ss delta_{S,1}) delta_{l,0}/n^3
///     + (1 - delta_{l,0}) delta_{S,1} C_{j,l} / (n^3 l(l+1)(2l+1)) }.
/// The spin-structure term carries 1/n^3 and enters with + sign; both are
/// fixed by the quadrature oracle (see docs/numerics.md). Finite for every
/// valid beta and independent of m_j.
double energy1(const Species& s, const WilsonCoefficients& w, const QuantumNumbers& beta);

/// Same with an explicit speed of light (to probe the exact 1/c^2 scaling).
double energy1_with_c(const Species& s, const WilsonCoefficients& w, const QuantumNumbers& beta,
                      double c);

/// State-dependent rest mass M_alpha = M [1 + E^(0)_alpha/(M c^2)].
double state_mass(const Species& s, const QuantumNumbers& beta);
double state_mass_with_c(const Species& s, const QuantumNumbers& beta, double c);

/// Mean mass Mbar = M + (E_e^(0) + E_g^(0))/(2 c^2) of a two-level reduction.
double mean_mass(double E_g0, double E_e0, double M, double c);

struct EnergyLevel {
  QuantumNumbers beta;
  double E0 = 0.0;       // hartree
  double E1 = 0.0;       // hartree
  double M_alpha = 0.0;  // m_e
};

/// All valid states with n <= n_max, sorted by (n, E1, l, S, j, m_j).
std::vector<EnergyLevel> level_table(const Species& s, const WilsonCoefficients& w, int n_max);

}  // namespace cobos
