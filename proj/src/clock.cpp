#include "cobos/clock.hpp"

#include <cmath>
#include <stdexcept>

#include "cobos/spectrum.hpp"
#include "cobos/units.hpp"

namespace cobos {

ClockParams reduce_to_clock_with_c(const Species& s, const QuantumNumbers& beta_g,
                                   const QuantumNumbers& beta_e, double c) {
  validate(beta_g);
  validate(beta_e);
  const double Eg = energy0(s, beta_g.n);
  const double Ee = energy0(s, beta_e.n);
  if (Eg == Ee) throw std::domain_error("reduce_to_clock: states are degenerate (E_g0 == E_e0)");
  if (Eg > Ee) throw std::domain_error("reduce_to_clock: requires E_g0 < E_e0");
  ClockParams p;
  p.M = s.M;
  p.c = c;
  p.E_g0 = Eg;
  p.E_e0 = Ee;
  p.Omega = Ee - Eg;  // hbar = 1
  p.M_bar = mean_mass(Eg, Ee, s.M, c);
  p.M_g = s.M * (1.0 + Eg / (s.M * c * c));
  p.M_e = s.M * (1.0 + Ee / (s.M * c * c));
  return p;
}

ClockParams reduce_to_clock(const Species& s, const QuantumNumbers& beta_g,
                            const QuantumNumbers& beta_e) {
  return reduce_to_clock_with_c(s, beta_g, beta_e, constants().c);
}

ClockParams clock_preset(const std::string& name) {
  if (name == "sr88") {
    const double c = constants().c;
    ClockParams p;
    p.M = 87.9056122571 * codata_2018::amu_electron_mass_ratio;
    p.c = c;
    p.Omega = convert(1.78, Unit::electronvolt, Unit::hartree);
    p.E_e0 = 0.5 * p.Omega;
    p.E_g0 = -0.5 * p.Omega;
    p.M_bar = mean_mass(p.E_g0, p.E_e0, p.M, c);  // = M for the symmetric split
    p.M_g = p.M * (1.0 + p.E_g0 / (p.M * c * c));
    p.M_e = p.M * (1.0 + p.E_e0 / (p.M * c * c));
    return p;
  }
  throw std::invalid_argument("unknown clock preset: " + name);
}

double dispersion_energy(double M_alpha, double M_p4, double E1, double P, double c,
                         bool include_P4) {
  double e = M_alpha * c * c + E1 + P * P / (2.0 * M_alpha);
  if (include_P4) e -= P * P * P * P / (8.0 * M_p4 * M_p4 * M_p4 * c * c);
  return e;
}

double equivalence_residual(const Species& s, const QuantumNumbers& beta_g,
                            const QuantumNumbers& beta_e, double P, double c_scale) {
  if (!(c_scale > 0.0)) throw std::domain_error("equivalence_residual: c_scale must be positive");
  const double c = constants().c * c_scale;
  const ClockParams p = reduce_to_clock_with_c(s, beta_g, beta_e, c);
  // form1 - form2 with form1 = Mc^2 + E_j + (P^2/2M)(1 - E_j/Mc^2) and
  // form2 = Mbar c^2 + h_j + (P^2/2Mbar)(1 - h_j/(Mbar c^2)). The rest
  // energies cancel identically (Mbar c^2 + h_j = Mc^2 + E_j), and a naive
  // subtraction of ~Mc^2 numbers underflows the c^-4 remainder in double
  // precision, so the kinetic coefficient difference is evaluated in its
  // exactly rearranged form:
  //   A - B = -Ebar^2/(c^4 M^2 Mbar) - h_j Ebar (M + Mbar)/(c^4 M^2 Mbar^2).
  const double M = s.M;
  const double Mbar = p.M_bar;
  const double ebar = 0.5 * (p.E_e0 + p.E_g0);
  const double c4 = c * c * c * c;
  double worst = 0.0;
  const double kin = P * P / 2.0;
  for (int j = 0; j < 2; ++j) {
    const double hj = (j == 0) ? -0.5 * p.Omega : 0.5 * p.Omega;
    const double coef_diff = -ebar * ebar / (c4 * M * M * Mbar) -
                             hj * ebar * (M + Mbar) / (c4 * M * M * Mbar * Mbar);
    worst = std::max(worst, std::abs(kin * coef_diff));
  }
  return worst;
}

double doppler_shift(double Omega, double v, double c) {
  if (!(std::abs(v) < c)) throw std::domain_error("doppler_shift: need |v| < c");
  return Omega * (1.0 - 0.5 * (v / c) * (v / c));
}

double doppler_shift_from_p2(double Omega, double P_sq_expectation, double M_bar, double c) {
  return Omega * (1.0 - 0.5 * P_sq_expectation / (M_bar * c * M_bar * c));
}

PacketSnapshot packet_evolve(const GaussianPacket& packet, double t) {
  if (!(packet.sigma0 > 0.0)) throw std::domain_error("packet_evolve: sigma0 must be positive");
  PacketSnapshot snap;
  snap.center = packet.x0 + packet.P0 / packet.mass * t;
  const double spread = t / (2.0 * packet.mass * packet.sigma0 * packet.sigma0);
  snap.width = packet.sigma0 * std::sqrt(1.0 + spread * spread);
  return snap;
}

}  // namespace cobos
