#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "cobos/constants.hpp"
#include "cobos/units.hpp"

using namespace cobos;

TEST_CASE("c * alpha == 1 exactly in atomic units") {
  const auto& k = constants();
  CHECK(std::abs(k.c * k.alpha - 1.0) <= 1e-15);
}

TEST_CASE("unit conversions: pinned CODATA anchors") {
  CHECK(convert(1.0, Unit::hartree, Unit::electronvolt) == doctest::Approx(27.211386).epsilon(1e-7));
  CHECK(convert(-0.5, Unit::hartree, Unit::electronvolt) == doctest::Approx(-13.605693).epsilon(1e-7));
  CHECK(convert(1.0, Unit::bohr, Unit::bohr) == 1.0);
  CHECK(convert(1.0, Unit::bohr, Unit::angstrom) == doctest::Approx(0.529177210903).epsilon(1e-12));
  CHECK(convert(1.0, Unit::hartree, Unit::gigahertz) ==
        doctest::Approx(6.579683920502e6).epsilon(1e-12));
}

TEST_CASE("round-trip conversions are identity to 1e-14 for all unit pairs") {
  const std::vector<std::vector<Unit>> families = {
      {Unit::hartree, Unit::electronvolt, Unit::joule, Unit::hertz, Unit::megahertz,
       Unit::gigahertz},
      {Unit::bohr, Unit::angstrom, Unit::meter, Unit::nanometer},
      {Unit::electron_mass, Unit::kilogram, Unit::amu},
      {Unit::atomic_time, Unit::second},
      {Unit::atomic_velocity, Unit::meter_per_second}};
  const double probes[] = {1.0, 1.8131e-7, 3.7, 9.4e11};
  for (const auto& family : families)
    for (Unit a : family)
      for (Unit b : family)
        for (double x : probes) {
          const double back = convert(convert(x, a, b), b, a);
          CHECK(std::abs(back - x) <= 1e-14 * std::abs(x));
        }
}

TEST_CASE("incompatible dimensions raise unit_error") {
  CHECK_THROWS_AS(convert(1.0, Unit::bohr, Unit::electronvolt), unit_error);
  CHECK_THROWS_AS(convert(1.0, Unit::second, Unit::kilogram), unit_error);
}

TEST_CASE("unit name round trip") {
  for (Unit u : {Unit::hartree, Unit::electronvolt, Unit::gigahertz, Unit::bohr, Unit::amu,
                 Unit::second, Unit::meter_per_second})
    CHECK(parse_unit(unit_name(u)) == u);
}

TEST_CASE("make_species: hydrogen") {
  const Species s = make_species(1.0, 1836.15267343, 1);
  CHECK(s.m_r == doctest::Approx(0.999455679).epsilon(1e-9));
  CHECK(s.Q == 0.0);
  CHECK(s.M == s.m_e + s.m_n);
  CHECK(std::abs(s.m_r * s.M - s.m_e * s.m_n) <= 1e-15 * s.m_e * s.m_n);
}

TEST_CASE("make_species: equal masses and helium ion") {
  const Species ps = make_species(1.0, 1.0, 1);
  CHECK(ps.delta_m == 0.0);
  CHECK(ps.m_r == 0.5);

  const Species he = make_species(1.0, 7294.29954, 2);
  CHECK(he.Q == 1.0);
  CHECK(he.q_n == 2.0);
}

TEST_CASE("make_species: domain errors") {
  CHECK_THROWS_AS(make_species(0.0, 1.0, 1), std::domain_error);
  CHECK_THROWS_AS(make_species(1.0, -2.0, 1), std::domain_error);
  CHECK_THROWS_AS(make_species(1.0, 1.0, 0), std::domain_error);
}

TEST_CASE("species presets resolve from the pinned table") {
  const Species h = species_preset("hydrogen");
  CHECK(h.m_n == codata_2018::proton_electron_mass_ratio);
  CHECK_THROWS_AS(species_preset("unobtainium"), std::invalid_argument);
}

TEST_CASE("constants dump carries the version tag") {
  const std::string dump = constants_json();
  CHECK(dump.find("CODATA-2018") != std::string::npos);
  CHECK(dump.find("hartree_in_eV") != std::string::npos);
}

TEST_CASE("conversion chaining is associative") {
  const double x = 0.37;
  const double direct = convert(x, Unit::hartree, Unit::gigahertz);
  const double chained = convert(convert(x, Unit::hartree, Unit::electronvolt),
                                 Unit::electronvolt, Unit::gigahertz);
  CHECK(std::abs(direct - chained) <= 1e-14 * std::abs(direct));
}
