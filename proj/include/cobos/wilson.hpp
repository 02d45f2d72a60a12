#pragma once

#include <string>

#include "cobos/constants.hpp"

namespace cobos {

/// High-energy Wilson coefficients of the two constituents plus the d-type
/// contact coefficients. Tree level means every c-bar equals 1; anomalous
/// magnetic moments enter only through cF. cW1/cA1 are carried for
/// completeness but feed only magnetic-field couplings outside this
/// library's scope; the internal-energy formulas accept and ignore them.
struct WilsonCoefficients {
  double cF_e = 1.0, cF_n = 1.0;
  double cD_e = 1.0, cD_n = 1.0;
  double cS_e = 1.0, cS_n = 1.0;
  double cW1_e = 1.0, cW1_n = 1.0;
  double cA1_e = 1.0, cA1_n = 1.0;
  // Contact coefficients; no electron-nucleus values are pinned, so they
  // default to zero and stay user-configurable.
  double d1_en = 0.0, d1_ne = 0.0;
  double d2_en = 0.0, d2_ne = 0.0;

  static WilsonCoefficients tree() { return WilsonCoefficients{}; }

  /// Tree level with anomalous moments folded into cF:
  /// cF_e = 1 + a_e, cF_n = 1 + a_n/Z (so the hydrogen preset reproduces
  /// g_e/2 = 1.00115965 and g_p/2 = 2.79285).
  static WilsonCoefficients with_anomalous_moments(double a_e, double a_n, int Z);

  /// "tree" or "hydrogen" (a_e = 0.00115965, a_p = 1.79285, Z = 1).
  static WilsonCoefficients preset(const std::string& name);
};

/// Low-energy coefficients entering the relative-motion corrections.
struct AlphaCoefficients {
  double alpha_D = 0.0;
  double alpha_lS = 0.0;
  double alpha_ls = 0.0;
  double alpha_ss = 0.0;
};

/// Combines the high-energy coefficients and constituent masses:
///   alpha_D  = (m_n^2 cD_e + m_e^2 cD_n)/(2 m_r M) + (d1_en + d1_ne)/(pi Z alpha)
///   alpha_lS = (m_e cF_e + m_n cF_n)/M + (m_e cS_n + m_n cS_e)/(2M)
///   alpha_ls = cF_e - cF_n + (cS_e m_n^2 - cS_n m_e^2)/(2 m_r M)
///   alpha_ss = (8/3) cF_n cF_e - 4 (d2_en + d2_ne)/(pi Z alpha)
/// The fine-structure constant only matters when d-coefficients are nonzero.
AlphaCoefficients alpha_coefficients(const WilsonCoefficients& w, const Species& s,
                                     double alpha = codata_2018::fine_structure_alpha);

}  // namespace cobos
