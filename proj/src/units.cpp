#include "cobos/units.hpp"

#include "cobos/constants.hpp"

namespace cobos {

namespace {

// Factor taking one unit of u to the base unit of its dimension
// (hartree, bohr, m_e, atomic time, atomic velocity).
double factor_to_base(Unit u) {
  using namespace codata_2018;
  switch (u) {
    case Unit::hartree: return 1.0;
    case Unit::electronvolt: return 1.0 / hartree_in_eV;
    case Unit::joule: return 1.0 / hartree_in_J;
    case Unit::hertz: return 1.0 / hartree_in_Hz;
    case Unit::megahertz: return 1e6 / hartree_in_Hz;
    case Unit::gigahertz: return 1e9 / hartree_in_Hz;
    case Unit::bohr: return 1.0;
    case Unit::angstrom: return 1e-10 / bohr_in_m;
    case Unit::meter: return 1.0 / bohr_in_m;
    case Unit::nanometer: return 1e-9 / bohr_in_m;
    case Unit::electron_mass: return 1.0;
    case Unit::kilogram: return 1.0 / electron_mass_kg;
    case Unit::amu: return amu_electron_mass_ratio;
    case Unit::atomic_time: return 1.0;
    case Unit::second: return 1.0 / atomic_time_in_s;
    case Unit::atomic_velocity: return 1.0;
    case Unit::meter_per_second: return 1.0 / atomic_velocity_in_m_s;
  }
  throw unit_error("unhandled unit");
}

}  // namespace

Dimension dimension_of(Unit u) {
  switch (u) {
    case Unit::hartree:
    case Unit::electronvolt:
    case Unit::joule:
    case Unit::hertz:
    case Unit::megahertz:
    case Unit::gigahertz: return Dimension::energy;
    case Unit::bohr:
    case Unit::angstrom:
    case Unit::meter:
    case Unit::nanometer: return Dimension::length;
    case Unit::electron_mass:
    case Unit::kilogram:
    case Unit::amu: return Dimension::mass;
    case Unit::atomic_time:
    case Unit::second: return Dimension::time;
    case Unit::atomic_velocity:
    case Unit::meter_per_second: return Dimension::velocity;
  }
  throw unit_error("unhandled unit");
}

Unit parse_unit(const std::string& name) {
  if (name == "hartree" || name == "Eh" || name == "au_energy") return Unit::hartree;
  if (name == "eV") return Unit::electronvolt;
  if (name == "J") return Unit::joule;
  if (name == "Hz") return Unit::hertz;
  if (name == "MHz") return Unit::megahertz;
  if (name == "GHz") return Unit::gigahertz;
  if (name == "bohr" || name == "a0") return Unit::bohr;
  if (name == "angstrom" || name == "A") return Unit::angstrom;
  if (name == "m") return Unit::meter;
  if (name == "nm") return Unit::nanometer;
  if (name == "m_e" || name == "me") return Unit::electron_mass;
  if (name == "kg") return Unit::kilogram;
  if (name == "u" || name == "amu") return Unit::amu;
  if (name == "t_au" || name == "atomic_time") return Unit::atomic_time;
  if (name == "s") return Unit::second;
  if (name == "v_au" || name == "atomic_velocity") return Unit::atomic_velocity;
  if (name == "m/s") return Unit::meter_per_second;
  throw unit_error("unknown unit name: " + name);
}

std::string unit_name(Unit u) {
  switch (u) {
    case Unit::hartree: return "hartree";
    case Unit::electronvolt: return "eV";
    case Unit::joule: return "J";
    case Unit::hertz: return "Hz";
    case Unit::megahertz: return "MHz";
    case Unit::gigahertz: return "GHz";
    case Unit::bohr: return "bohr";
    case Unit::angstrom: return "angstrom";
    case Unit::meter: return "m";
    case Unit::nanometer: return "nm";
    case Unit::electron_mass: return "m_e";
    case Unit::kilogram: return "kg";
    case Unit::amu: return "amu";
    case Unit::atomic_time: return "t_au";
    case Unit::second: return "s";
    case Unit::atomic_velocity: return "v_au";
    case Unit::meter_per_second: return "m/s";
  }
  return "?";
}

double convert(double value, Unit from, Unit to) {
  if (dimension_of(from) != dimension_of(to))
    throw unit_error("incompatible dimensions: " + unit_name(from) + " -> " + unit_name(to));
  if (from == to) return value;
  return value * (factor_to_base(from) / factor_to_base(to));
}

}  // namespace cobos
