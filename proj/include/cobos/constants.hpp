#pragma once

#include <string>

namespace cobos {

/**
 * CODATA 2018 recommended values, https://physics.nist.gov/cuu/Constants/.
 *
 * Everything downstream works in Hartree atomic units
 * (hbar = m_e = e = 4*pi*eps0 = 1, c = 1/alpha), so the entries here are
 * either dimensionless or conversion factors applied at the I/O boundary.
 */
namespace codata_2018 {

static constexpr const char* version = "CODATA-2018";

// Fundamental
static constexpr double fine_structure_alpha = 7.2973525693e-3;  // dimensionless
static constexpr double electron_mass_kg = 9.1093837015e-31;     // kg
static constexpr double elementary_charge_C = 1.602176634e-19;   // C
static constexpr double speed_of_light_m_s = 299792458.0;        // m/s (exact)
static constexpr double hbar_J_s = 1.054571817e-34;              // J*s

// Mass ratios (atomic units carry masses in m_e)
static constexpr double proton_electron_mass_ratio = 1836.15267343;
static constexpr double alpha_particle_electron_mass_ratio = 7294.29954142;
static constexpr double deuteron_electron_mass_ratio = 3670.48296788;
static constexpr double amu_electron_mass_ratio = 1822.888486209;

// Conversion factors out of Hartree atomic units
static constexpr double hartree_in_eV = 27.211386245988;
static constexpr double hartree_in_J = 4.3597447222071e-18;
static constexpr double hartree_in_Hz = 6.579683920502e15;  // E_h/h
static constexpr double bohr_in_m = 5.29177210903e-11;
static constexpr double atomic_time_in_s = 2.4188843265857e-17;
static constexpr double atomic_velocity_in_m_s = 2.18769126364e6;

}  // namespace codata_2018

/// Atomic-unit view of the fundamental constants. hbar = m_e = e = 1 and
/// eps0 = 1/(4 pi) by construction; c is derived from alpha so that
/// c * alpha == 1 holds to the last ulp.
struct PhysicalConstants {
  double alpha = codata_2018::fine_structure_alpha;
  double c = 1.0 / codata_2018::fine_structure_alpha;  // a.u. of velocity
  double hbar = 1.0;
  double eps0 = 1.0 / (4.0 * 3.141592653589793238462643383279502884);
  double electron_mass_SI = codata_2018::electron_mass_kg;  // kg
  double hartree_in_eV = codata_2018::hartree_in_eV;
  double hartree_in_Hz = codata_2018::hartree_in_Hz;
  double bohr_in_m = codata_2018::bohr_in_m;
  double atomic_time_in_s = codata_2018::atomic_time_in_s;
  std::string version = codata_2018::version;
};

const PhysicalConstants& constants();

/// JSON dump of the pinned constants table (for fixture pinning via the CLI).
std::string constants_json();

/// One coboson species: a nucleus of charge +Z e and mass m_n bound to an
/// electron (charge -e, mass m_e). Masses in m_e (atomic units).
struct Species {
  double m_e = 1.0;
  double m_n = 1.0;
  int Z = 1;

  // Derived
  double M = 2.0;        // total mass m_e + m_n
  double m_r = 0.5;      // reduced mass m_e m_n / M
  double delta_m = 0.0;  // m_n - m_e
  double q_e = -1.0;     // electron charge, units of e
  double q_n = 1.0;      // nucleus charge, +Z
  double Q = 0.0;        // total charge q_n + q_e = Z - 1

  /// Reduced Bohr length 1/(Z m_r) in bohr.
  double bohr_length() const { return 1.0 / (static_cast<double>(Z) * m_r); }
};

/// Builds a species and populates the derived fields.
/// Throws std::domain_error for non-positive masses or Z < 1.
Species make_species(double m_e, double m_n, int Z);

/// Named presets backed by the pinned constants table.
/// Known names: "hydrogen", "positronium", "helium-ion" (alias "heplus"),
/// "deuterium". Throws std::invalid_argument for unknown names.
Species species_preset(const std::string& name);

}  // namespace cobos
