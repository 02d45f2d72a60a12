#include "cobos/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cobos {

namespace {

double clamped_sqrt(double x) { return x <= 0.0 ? 0.0 : std::sqrt(x); }

}  // namespace

double clebsch_gordan(int j, int S, int m_S, int ell, int m_j) {
  if (ell < 0) throw std::domain_error("clebsch_gordan: l must be >= 0");
  const double l = ell;
  const double m = m_j;
  if (S == 0) {
    if (j != ell) throw std::domain_error("clebsch_gordan: S=0 requires j=l");
    return m_S == 0 ? 1.0 : 0.0;
  }
  if (S != 1) throw std::domain_error("clebsch_gordan: S must be 0 or 1");
  if (m_S < -1 || m_S > 1) return 0.0;
  // Spatial partner is |l, m_j - m_S>; outside its support the entry is 0.
  if (std::abs(m_j - m_S) > ell) return 0.0;
  if (j == ell + 1) {
    if (m_S == 1) return clamped_sqrt((l + m) * (l + m + 1) / (2.0 * (l + 1) * (2 * l + 1)));
    if (m_S == 0) return clamped_sqrt((l - m + 1) * (l + m + 1) / ((l + 1) * (2 * l + 1)));
    return clamped_sqrt((l - m) * (l - m + 1) / (2.0 * (l + 1) * (2 * l + 1)));
  }
  if (j == ell && ell >= 1) {
    if (m_S == 1) return clamped_sqrt((l + m) * (l - m + 1) / (2.0 * l * (l + 1)));
    if (m_S == 0) return -m / std::sqrt(l * (l + 1));
    return -clamped_sqrt((l - m) * (l + m + 1) / (2.0 * l * (l + 1)));
  }
  if (j == ell - 1 && ell >= 1) {
    if (m_S == 1) return clamped_sqrt((l - m) * (l - m + 1) / (2.0 * l * (2 * l + 1)));
    if (m_S == 0) return -clamped_sqrt((l - m) * (l + m) / (l * (2 * l + 1)));
    return clamped_sqrt((l + m) * (l + m + 1) / (2.0 * l * (2 * l + 1)));
  }
  throw std::domain_error("clebsch_gordan: invalid (j, S, l) row");
}

double energy0(const Species& s, int n) {
  if (n < 1) throw std::domain_error("energy0: n must be >= 1");
  const double Z = static_cast<double>(s.Z);
  return -s.m_r * Z * Z / (2.0 * static_cast<double>(n) * static_cast<double>(n));
}

double c_jl(const WilsonCoefficients& w, const Species& s, int j, int ell) {
  if (ell < 1) throw std::domain_error("c_jl: requires l >= 1");
  const AlphaCoefficients a = alpha_coefficients(w, s);
  const double so = a.alpha_lS + s.delta_m / (2.0 * s.M) * a.alpha_ls;
  const double ff = w.cF_e * w.cF_n;
  const double l = ell;
  if (j == ell + 1) return l / (2 * l + 3) * (2.0 * (2 * l + 3) * so - ff);
  if (j == ell) return -2.0 * so + ff;
  if (j == ell - 1) return -(l + 1) / (2 * l - 1) * (2.0 * (2 * l - 1) * so + ff);
  throw std::domain_error("c_jl: j must be one of l-1, l, l+1");
}

double energy1_with_c(const Species& s, const WilsonCoefficients& w, const QuantumNumbers& b,
                      double c) {
  validate(b);
  if (!(c > 0.0)) throw std::domain_error("energy1: c must be positive");
  const AlphaCoefficients a = alpha_coefficients(w, s, 1.0 / c);
  const double Z = static_cast<double>(s.Z);
  const double n = b.n;
  const double l = b.ell;
  const double n3 = n * n * n;
  const double n4 = n3 * n;
  // m_r^2 c^2 (Z alpha)^4 / M with alpha = 1/c
  const double prefactor = s.m_r * s.m_r * Z * Z * Z * Z / (s.M * c * c);

  const double me3 = s.m_e * s.m_e * s.m_e;
  const double mn3 = s.m_n * s.m_n * s.m_n;
  double brace = (me3 + mn3) / (8.0 * s.m_r * s.M * s.M) * (3.0 - 8.0 * n / (2 * l + 1)) / n4;
  brace += (1.0 - 3.0 * n / (2 * l + 1)) / n4;
  if (b.ell == 0) {
    const double spin_contact = (b.S == 1) ? a.alpha_ss : 0.0;
    brace += (a.alpha_D - 0.75 * a.alpha_ss + spin_contact) / n3;
  } else if (b.S == 1) {
    // Sign and 1/n^3 fixed by the quadrature oracle; see docs/numerics.md.
    brace += c_jl(w, s, b.j, b.ell) / (n3 * l * (l + 1) * (2 * l + 1));
  }
  return prefactor * brace;
}

double energy1(const Species& s, const WilsonCoefficients& w, const QuantumNumbers& beta) {
  return energy1_with_c(s, w, beta, constants().c);
}

double state_mass_with_c(const Species& s, const QuantumNumbers& beta, double c) {
  validate(beta);
  const double E0 = energy0(s, beta.n);
  return s.M * (1.0 + E0 / (s.M * c * c));
}

double state_mass(const Species& s, const QuantumNumbers& beta) {
  return state_mass_with_c(s, beta, constants().c);
}

double mean_mass(double E_g0, double E_e0, double M, double c) {
  return M + (E_e0 + E_g0) / (2.0 * c * c);
}

std::vector<EnergyLevel> level_table(const Species& s, const WilsonCoefficients& w, int n_max) {
  if (n_max < 1) throw std::domain_error("level_table: n_max must be >= 1");
  std::vector<EnergyLevel> levels;
  for (const QuantumNumbers& b : enumerate_states(n_max)) {
    EnergyLevel lvl;
    lvl.beta = b;
    lvl.E0 = energy0(s, b.n);
    lvl.E1 = energy1(s, w, b);
    lvl.M_alpha = state_mass(s, b);
    levels.push_back(lvl);
  }
  std::sort(levels.begin(), levels.end(), [](const EnergyLevel& x, const EnergyLevel& y) {
    auto key = [](const EnergyLevel& e) {
      return std::tuple<int, double, int, int, int, int>(e.beta.n, e.E1, e.beta.ell, e.beta.S,
                                                         e.beta.j, e.beta.m_j);
    };
    return key(x) < key(y);
  });
  return levels;
}

}  // namespace cobos
