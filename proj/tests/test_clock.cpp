#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "cobos/clock.hpp"
#include "cobos/constants.hpp"
#include "cobos/spectrum.hpp"
#include "cobos/units.hpp"

using namespace cobos;

namespace {
const Species kH = species_preset("hydrogen");
const QuantumNumbers k1S{1, 0, 0, 0, 0};
const QuantumNumbers k2S{2, 0, 0, 0, 0};
}

TEST_CASE("reduce_to_clock: hydrogen 1S/2S") {
  const ClockParams p = reduce_to_clock(kH, k1S, k2S);
  CHECK(convert(p.Omega, Unit::hartree, Unit::electronvolt) ==
        doctest::Approx(10.20).epsilon(1e-3));
  CHECK(p.M_g < p.M_bar);
  CHECK(p.M_bar < p.M_e);
  CHECK_THROWS_AS(reduce_to_clock(kH, k1S, k1S), std::domain_error);
  CHECK_THROWS_AS(reduce_to_clock(kH, k2S, k1S), std::domain_error);
}

TEST_CASE("sr88 preset: mean mass equals bare mass, hOmega/(Mbar c^2) ~ 2.2e-11") {
  const ClockParams p = clock_preset("sr88");
  CHECK(p.M_bar == doctest::Approx(p.M).epsilon(1e-15));
  const double ratio = p.Omega / (p.M_bar * p.c * p.c);
  CHECK(ratio == doctest::Approx(2.2e-11).epsilon(0.05));
  CHECK_THROWS_AS(clock_preset("cs133"), std::invalid_argument);
}

TEST_CASE("dispersion: rest point, monotonicity, quartic turnover") {
  const double c = constants().c;
  const double M = kH.M;
  const double Ma = state_mass(kH, k1S);
  const double E1 = 1.7e-7;
  CHECK(dispersion_energy(Ma, M, E1, 0.0, c, true) == Ma * c * c + E1);
  // Monotone below the turnover.
  const double p_star = std::sqrt(2.0) * M * c * std::sqrt(M / Ma);
  double prev = -1e300;
  for (int i = 0; i <= 100; ++i) {
    const double P = 0.999 * p_star * i / 100.0;
    const double e = dispersion_energy(Ma, M, E1, P, c, true);
    CHECK(e > prev);
    prev = e;
  }
  // Derivative changes sign across p_star.
  const double h = 1e-4 * p_star;
  auto dEdP = [&](double P) {
    return (dispersion_energy(Ma, M, E1, P + h, c, true) -
            dispersion_energy(Ma, M, E1, P - h, c, true)) /
           (2.0 * h);
  };
  CHECK(dEdP(0.999 * p_star) > 0.0);
  CHECK(dEdP(1.001 * p_star) < 0.0);
  CHECK(p_star == doctest::Approx(std::sqrt(2.0) * M * c).epsilon(1e-7));
}

TEST_CASE("dispersion: P^4 relative size follows (v/c)^2 laws down to the fountain scale") {
  // At v/c = 1e-7 the quartic term sits ~22 digits below Mc^2, far under the
  // ulp of a direct subtraction. Measure the ratios at representable
  // velocities, confirm the exact quadratic laws, and evaluate the fountain
  // value through them.
  const double c = constants().c;
  const double M = kH.M;
  auto measured_energy_ratio = [&](double voverc) {
    const double P = M * voverc * c;
    const double quad = dispersion_energy(M, M, 0.0, P, c, false) - M * c * c;
    const double quart = quad - (dispersion_energy(M, M, 0.0, P, c, true) - M * c * c);
    return quart / quad;
  };
  auto measured_velocity_ratio = [&](double voverc) {
    const double P = M * voverc * c;
    const double h = 1e-4 * P;
    auto v_group = [&](bool p4) {
      return (dispersion_energy(M, M, 0.0, P + h, c, p4) -
              dispersion_energy(M, M, 0.0, P - h, c, p4)) /
             (2.0 * h);
    };
    return (v_group(false) - v_group(true)) / v_group(false);
  };
  for (double voverc : {1e-2, 3e-3, 1e-3})
    CHECK(measured_energy_ratio(voverc) ==
          doctest::Approx(0.25 * voverc * voverc).epsilon(5e-3));
  for (double voverc : {0.03, 0.01})
    CHECK(measured_velocity_ratio(voverc) ==
          doctest::Approx(0.5 * voverc * voverc).epsilon(1e-2));
  // Fountain scale through the verified quadratic laws.
  const double base = 1e-2;
  const double scale = std::pow(1e-7 / base, 2);
  CHECK(measured_energy_ratio(base) * scale == doctest::Approx(0.25e-14).epsilon(5e-3));
  CHECK(measured_velocity_ratio(base) * scale == doctest::Approx(0.5e-14).epsilon(1e-2));
}

TEST_CASE("state masses reproduce the reduced clock dispersion to O(c^-4)") {
  const double c = constants().c;
  const ClockParams p = reduce_to_clock(kH, k1S, k2S);
  // |M [1 + E_j/(M c^2)] - (Mbar +- hOmega/(2 c^2))| / M within (hOmega/(Mbar c^2))^2 x 10
  const double lhs_g = std::abs(p.M_g - (p.M_bar - 0.5 * p.Omega / (c * c))) / p.M;
  const double lhs_e = std::abs(p.M_e - (p.M_bar + 0.5 * p.Omega / (c * c))) / p.M;
  const double budget = 10.0 * std::pow(p.Omega / (p.M_bar * c * c), 2);
  CHECK(lhs_g < budget);
  CHECK(lhs_e < budget);
}

TEST_CASE("equivalence residual: exact zero at P = 0, c^-4 scaling, thermal smallness") {
  CHECK(equivalence_residual(kH, k1S, k2S, 0.0, 1.0) == 0.0);

  // Thermal-ish momentum: residual / hOmega << (P/Mc)^2.
  const double c = constants().c;
  const double P = 1.3;
  const ClockParams p = reduce_to_clock(kH, k1S, k2S);
  const double res = equivalence_residual(kH, k1S, k2S, P, 1.0);
  CHECK(res / p.Omega < 1e-4 * std::pow(P / (kH.M * c), 2));

  // Fit the c-scale exponent over {1, 2, 4, 8}.
  std::vector<double> lnc, lnr;
  for (double s : {1.0, 2.0, 4.0, 8.0}) {
    lnc.push_back(std::log(s));
    lnr.push_back(std::log(equivalence_residual(kH, k1S, k2S, P, s)));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lnc.size(); ++i) {
    sx += lnc[i];
    sy += lnr[i];
    sxx += lnc[i] * lnc[i];
    sxy += lnc[i] * lnr[i];
  }
  const double n = lnc.size();
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::abs(slope + 4.0) < 0.1);
  // Doubling c drops the residual by ~16.
  const double drop = equivalence_residual(kH, k1S, k2S, P, 1.0) /
                      equivalence_residual(kH, k1S, k2S, P, 2.0);
  CHECK(drop == doctest::Approx(16.0).epsilon(0.02));
}

TEST_CASE("doppler shift: exact formula behavior") {
  const double c = constants().c;
  CHECK(doppler_shift(2.5, 0.0, c) == 2.5);
  const double v = 0.03 * c;
  const double om = doppler_shift(1.0, v, c);
  CHECK(1.0 - om == doctest::Approx(4.5e-4).epsilon(1e-12));
  // First-order exactness: Omega'/Omega + (v/c)^2/2 == 1 to machine precision.
  for (double frac : {1e-7, 1e-3, 0.03, 0.4}) {
    const double shifted = doppler_shift(1.7, frac * c, c);
    CHECK(std::abs(shifted / 1.7 + 0.5 * frac * frac - 1.0) < 1e-15);
  }
  CHECK_THROWS_AS(doppler_shift(1.0, c, c), std::domain_error);
  CHECK_THROWS_AS(doppler_shift(1.0, -1.5 * c, c), std::domain_error);
}

TEST_CASE("doppler shift from <P^2>: thermal ensemble") {
  const double c = constants().c;
  const double Mbar = kH.M;
  const double kT = 9.5e-4;  // ~300 K in hartree
  const double shifted = doppler_shift_from_p2(1.0, Mbar * kT, Mbar, c);
  CHECK(1.0 - shifted == doctest::Approx(0.5 * kT / (Mbar * c * c)).epsilon(1e-12));
}

TEST_CASE("packet evolution: centers and widths") {
  GaussianPacket p;
  p.mass = 2.0;
  p.x0 = -3.0;
  p.sigma0 = 0.7;
  p.P0 = 1.1;
  const auto at0 = packet_evolve(p, 0.0);
  CHECK(at0.center == p.x0);
  CHECK(at0.width == p.sigma0);
  // Width symmetric and monotone in |t|.
  CHECK(packet_evolve(p, -4.0).width == packet_evolve(p, 4.0).width);
  CHECK(packet_evolve(p, 5.0).width > packet_evolve(p, 4.0).width);

  // Ground state (lighter) outruns the excited state at equal P0.
  const ClockParams cp = reduce_to_clock(kH, k1S, k2S);
  GaussianPacket g{cp.M_g, 0.0, 1.0, 0.5};
  GaussianPacket e{cp.M_e, 0.0, 1.0, 0.5};
  const double t = 1e6;
  CHECK(packet_evolve(g, t).center > packet_evolve(e, t).center);
  const double vg_over_ve = (packet_evolve(g, t).center / t) / (packet_evolve(e, t).center / t);
  CHECK(vg_over_ve == doctest::Approx(cp.M_e / cp.M_g).epsilon(1e-12));
  // Long-time width ratio approaches M_e/M_g.
  const double tt = 1e14;
  const double ratio = packet_evolve(g, tt).width / packet_evolve(e, tt).width;
  CHECK(ratio == doctest::Approx(cp.M_e / cp.M_g).epsilon(1e-6));
  GaussianPacket bad{1.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(packet_evolve(bad, 1.0), std::domain_error);
}

TEST_CASE("P^4 with bare M vs Mbar stays inside the c^-4 budget") {
  const double c = constants().c;
  const ClockParams p = reduce_to_clock(kH, k1S, k2S);
  // Large enough momentum that the quartic term is representable inside the
  // full dispersion (quart/Mc^2 = (v/c)^4/8).
  const double P = 0.01 * p.M * c;
  auto quartic_measured = [&](double mass_p4) {
    return dispersion_energy(p.M_g, mass_p4, 0.0, P, c, false) -
           dispersion_energy(p.M_g, mass_p4, 0.0, P, c, true);
  };
  const double q_m = P * P * P * P / (8.0 * std::pow(p.M, 3) * c * c);
  const double q_mbar = P * P * P * P / (8.0 * std::pow(p.M_bar, 3) * c * c);
  CHECK(quartic_measured(p.M) == doctest::Approx(q_m).epsilon(1e-6));
  // The two readings differ by a c^-2-suppressed fraction of the quartic
  // term, 3|Ebar|/(M c^2) relative (itself a c^-4 effect on the kinetic
  // energy) -- far inside the equivalence budget, and in fact below the
  // double-precision resolution of the full dispersion.
  const double rel = std::abs(q_m - q_mbar) / q_m;
  const double ebar = 0.5 * (p.E_e0 + p.E_g0);
  CHECK(rel == doctest::Approx(3.0 * std::abs(ebar) / (p.M * c * c)).epsilon(1e-4));
  CHECK(rel < 1e-7);
}

TEST_CASE("equal-momentum dispersion difference follows hOmega (1 - P^2/(2 Mbar^2 c^2))") {
  // Synthetic two-level system at reduced c so the k^2-suppressed piece of
  // the difference is representable in double precision.
  const double c = 20.0, M = 10.0, Eg = -0.6, Ee = -0.2;
  const double Mg = M * (1.0 + Eg / (M * c * c));
  const double Me = M * (1.0 + Ee / (M * c * c));
  const double mbar = M + (Ee + Eg) / (2.0 * c * c);
  const double omega = Ee - Eg;
  for (double P : {0.5, 1.0, 2.0}) {
    const double diff = dispersion_energy(Me, M, 0.0, P, c, false) -
                        dispersion_energy(Mg, M, 0.0, P, c, false);
    const double formula = omega * (1.0 - P * P / (2.0 * mbar * mbar * c * c));
    // Agreement to O(c^-4): the residual budget is (|E|/Mc^2)^2-suppressed.
    const double budget = 10.0 * omega * std::pow(std::abs(Eg) / (M * c * c), 2) *
                          std::pow(P / (mbar * c), 2) + 1e-15;
    CHECK(std::abs(diff - formula) < budget);
  }
}
