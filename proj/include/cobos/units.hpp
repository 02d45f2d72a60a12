#pragma once

#include <stdexcept>
#include <string>

namespace cobos {

/// Thrown when a conversion mixes dimensions (e.g. bohr -> eV).
struct unit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Unit {
  // energy (frequencies are energies via E = h nu, the atomic-physics habit)
  hartree,
  electronvolt,
  joule,
  hertz,
  megahertz,
  gigahertz,
  // length
  bohr,
  angstrom,
  meter,
  nanometer,
  // mass
  electron_mass,
  kilogram,
  amu,
  // time
  atomic_time,
  second,
  // velocity
  atomic_velocity,
  meter_per_second,
};

enum class Dimension { energy, length, mass, time, velocity };

Dimension dimension_of(Unit u);

/// Parses unit names as they appear in config files ("eV", "bohr", "MHz", ...).
Unit parse_unit(const std::string& name);
std::string unit_name(Unit u);

/// Converts value between units of the same dimension by exact factor
/// application (factor_to_base(from)/factor_to_base(to)); chaining is
/// associative. Throws unit_error on dimension mismatch.
double convert(double value, Unit from, Unit to);

}  // namespace cobos
