#pragma once

#include "cobos/constants.hpp"
#include "cobos/quantum_numbers.hpp"

namespace cobos {

/// Two-level mass-defect reduction of a coboson: mean mass, transition
/// frequency and the state-dependent masses of ground/excited state.
/// Atomic units throughout (hbar = 1, so Omega is an energy).
struct ClockParams {
  double M = 0.0;      // bare total mass
  double M_bar = 0.0;  // M + (E_e0 + E_g0)/(2 c^2)
  double Omega = 0.0;  // (E_e0 - E_g0)/hbar
  double M_g = 0.0;
  double M_e = 0.0;
  double E_g0 = 0.0;
  double E_e0 = 0.0;
  double c = 0.0;
};

/// Builds ClockParams from two internal states; requires E_g0 < E_e0.
ClockParams reduce_to_clock(const Species& s, const QuantumNumbers& beta_g,
                            const QuantumNumbers& beta_e);
ClockParams reduce_to_clock_with_c(const Species& s, const QuantumNumbers& beta_g,
                                   const QuantumNumbers& beta_e, double c);

/// Clock preset built from a literature transition rather than a
/// hydrogenlike solve. "sr88": the 1S0-3P0 optical transition (hOmega =
/// 1.78 eV) at the 88Sr atomic mass, with symmetric internal energies so
/// that M_bar = M.
ClockParams clock_preset(const std::string& name);

/// Single-state dispersion E(P) = M_alpha c^2 + E1 + P^2/(2 M_alpha)
/// - P^4/(8 M_p4^3 c^2). M_p4 is the mass cubed in the quartic term: the
/// bare M as printed, but callers can probe the Mbar variant.
double dispersion_energy(double M_alpha, double M_p4, double E1, double P, double c,
                         bool include_P4);

/// Max over the two internal states of |E_form1 - E_form2| at total momentum
/// P, where form1 carries (M, E_j0) and form2 the reduced (M_bar, +-
/// hbar Omega/2), both in the quadratic mass-defect structure. c is scaled
/// by c_scale wherever it appears explicitly; internal energies stay fixed.
/// Exactly zero at P = 0; scales as c^-4 at fixed P. Evaluated through an
/// exact cancellation-free rearrangement (the difference sits ~23 digits
/// below the rest energies, far under double-precision ulp of Mc^2).
double equivalence_residual(const Species& s, const QuantumNumbers& beta_g,
                            const QuantumNumbers& beta_e, double P, double c_scale);

/// Second-order Doppler shift Omega' = Omega (1 - (v/c)^2/2).
/// Throws std::domain_error for |v| >= c.
double doppler_shift(double Omega, double v, double c);

/// Quantum version: Omega' = Omega (1 - <(P/(M_bar c))^2>/2).
double doppler_shift_from_p2(double Omega, double P_sq_expectation, double M_bar, double c);

/// Free Gaussian wave packet of a state-dependent mass.
struct GaussianPacket {
  double mass = 1.0;
  double x0 = 0.0;
  double sigma0 = 1.0;
  double P0 = 0.0;
};

struct PacketSnapshot {
  double center = 0.0;
  double width = 0.0;
};

/// center(t) = x0 + (P0/m) t, width(t) = sigma0 sqrt(1 + (t/(2 m sigma0^2))^2).
PacketSnapshot packet_evolve(const GaussianPacket& packet, double t);

}  // namespace cobos
