#include "cobos/wilson.hpp"

#include <cmath>
#include <stdexcept>

namespace cobos {

WilsonCoefficients WilsonCoefficients::with_anomalous_moments(double a_e, double a_n, int Z) {
  if (Z < 1) throw std::domain_error("with_anomalous_moments: Z must be >= 1");
  WilsonCoefficients w;
  w.cF_e = 1.0 + a_e;
  w.cF_n = 1.0 + a_n / static_cast<double>(Z);
  return w;
}

WilsonCoefficients WilsonCoefficients::preset(const std::string& name) {
  if (name == "tree") return tree();
  if (name == "hydrogen") return with_anomalous_moments(0.00115965, 1.79285, 1);
  throw std::invalid_argument("unknown Wilson preset: " + name);
}

AlphaCoefficients alpha_coefficients(const WilsonCoefficients& w, const Species& s, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("alpha_coefficients: alpha must be positive");
  const double pi = 3.141592653589793238462643383279502884;
  const double Zalpha = static_cast<double>(s.Z) * alpha;
  AlphaCoefficients a;
  a.alpha_D = (s.m_n * s.m_n * w.cD_e + s.m_e * s.m_e * w.cD_n) / (2.0 * s.m_r * s.M) +
              (w.d1_en + w.d1_ne) / (pi * Zalpha);
  a.alpha_lS = (s.m_e * w.cF_e + s.m_n * w.cF_n) / s.M + (s.m_e * w.cS_n + s.m_n * w.cS_e) / (2.0 * s.M);
  a.alpha_ls = w.cF_e - w.cF_n + (w.cS_e * s.m_n * s.m_n - w.cS_n * s.m_e * s.m_e) / (2.0 * s.m_r * s.M);
  a.alpha_ss = (8.0 / 3.0) * w.cF_n * w.cF_e - 4.0 * (w.d2_en + w.d2_ne) / (pi * Zalpha);
  return a;
}

}  // namespace cobos
