#include "cobos/constants.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cobos {

const PhysicalConstants& constants() {
  static const PhysicalConstants table{};
  return table;
}

std::string constants_json() {
  const auto& k = constants();
  nlohmann::ordered_json j;
  j["version"] = k.version;
  j["alpha"] = k.alpha;
  j["c_au"] = k.c;
  j["hbar_au"] = k.hbar;
  j["eps0_au"] = k.eps0;
  j["electron_mass_kg"] = k.electron_mass_SI;
  j["hartree_in_eV"] = k.hartree_in_eV;
  j["hartree_in_J"] = codata_2018::hartree_in_J;
  j["hartree_in_Hz"] = k.hartree_in_Hz;
  j["bohr_in_m"] = k.bohr_in_m;
  j["atomic_time_in_s"] = k.atomic_time_in_s;
  j["atomic_velocity_in_m_s"] = codata_2018::atomic_velocity_in_m_s;
  j["proton_electron_mass_ratio"] = codata_2018::proton_electron_mass_ratio;
  j["alpha_particle_electron_mass_ratio"] = codata_2018::alpha_particle_electron_mass_ratio;
  j["deuteron_electron_mass_ratio"] = codata_2018::deuteron_electron_mass_ratio;
  j["amu_electron_mass_ratio"] = codata_2018::amu_electron_mass_ratio;
  return j.dump(2);
}

Species make_species(double m_e, double m_n, int Z) {
  if (!(m_e > 0.0)) throw std::domain_error("make_species: m_e must be positive");
  if (!(m_n > 0.0)) throw std::domain_error("make_species: m_n must be positive");
  if (Z < 1) throw std::domain_error("make_species: Z must be a positive integer");
  Species s;
  s.m_e = m_e;
  s.m_n = m_n;
  s.Z = Z;
  s.M = m_e + m_n;
  s.m_r = m_e * m_n / s.M;
  s.delta_m = m_n - m_e;
  s.q_e = -1.0;
  s.q_n = static_cast<double>(Z);
  s.Q = s.q_n + s.q_e;
  return s;
}

Species species_preset(const std::string& name) {
  if (name == "hydrogen") return make_species(1.0, codata_2018::proton_electron_mass_ratio, 1);
  if (name == "positronium") return make_species(1.0, 1.0, 1);
  if (name == "helium-ion" || name == "heplus")
    return make_species(1.0, codata_2018::alpha_particle_electron_mass_ratio, 2);
  if (name == "deuterium") return make_species(1.0, codata_2018::deuteron_electron_mass_ratio, 1);
  throw std::invalid_argument("unknown species preset: " + name);
}

}  // namespace cobos
