#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "cobos/constants.hpp"
#include "cobos/oracle.hpp"
#include "cobos/quadrature.hpp"
#include "cobos/radial.hpp"
#include "cobos/spectrum.hpp"

using namespace cobos;

namespace {
const Species kH = species_preset("hydrogen");
const Species kPs = species_preset("positronium");
}

TEST_CASE("quadrature: known integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 60.0) ==
        doctest::Approx(1.0).epsilon(1e-13));
  // Integrable endpoint behavior r^{-1/2}.
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10) ==
        doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("radial functions: normalization and node count") {
  for (int n = 1; n <= 5; ++n)
    for (int ell = 0; ell < n; ++ell) {
      const RadialFunction R(kH, n, ell);
      const double nrm = integrate([&](double r) { return R.value(r) * R.value(r) * r * r; }, 0.0,
                                   R.r_max(), 1e-13, 1e-16);
      CHECK(std::abs(nrm - 1.0) < 1e-10);
      CHECK(R.count_nodes() == n - ell - 1);
    }
}

TEST_CASE("radial derivatives agree with central differences") {
  const RadialFunction R(kH, 3, 1);
  const double h = 1e-5;
  for (double r : {0.4, 1.3, 4.8, 11.0}) {
    const double d1_fd = (R.value(r + h) - R.value(r - h)) / (2.0 * h);
    const double d2_fd = (R.value(r + h) - 2.0 * R.value(r) + R.value(r - h)) / (h * h);
    CHECK(R.d1(r) == doctest::Approx(d1_fd).epsilon(1e-8));
    CHECK(R.d2(r) == doctest::Approx(d2_fd).epsilon(1e-5));
  }
}

TEST_CASE("radial_expectation: closed forms vs quadrature") {
  const double zm = kH.Z * kH.m_r;
  CHECK(radial_expectation(kH, 3, 1, -1) == doctest::Approx(zm / 9.0).epsilon(1e-13));
  CHECK(radial_expectation(kH, 2, 1, 0) == 1.0);
  CHECK(radial_expectation(kH, 2, 1, -3) == doctest::Approx(zm * zm * zm / 24.0).epsilon(1e-13));
  for (int n = 1; n <= 4; ++n)
    for (int ell = 0; ell < n; ++ell)
      for (int k = -3; k <= 2; ++k) {
        if (k == -3 && ell == 0) continue;
        const double closed = radial_expectation(kH, n, ell, k);
        const double quad = radial_expectation_quadrature(kH, n, ell, k);
        CHECK(std::abs(closed - quad) <= 1e-10 * std::abs(closed));
      }
  CHECK_THROWS_AS(radial_expectation(kH, 2, 0, -3), std::domain_error);
  CHECK_THROWS_AS(radial_expectation(kH, 2, 0, -4), std::domain_error);
}

TEST_CASE("density at the origin matches (Z m_r)^3/(pi n^3)") {
  const double pi = 3.14159265358979323846;
  for (int n = 1; n <= 4; ++n) {
    const double zm = kH.Z * kH.m_r;
    CHECK(density_at_origin(kH, n, 0) ==
          doctest::Approx(zm * zm * zm / (pi * n * n * n)).epsilon(1e-12));
    if (n >= 2) CHECK(density_at_origin(kH, n, 1) == 0.0);
  }
}

TEST_CASE("hypervirial: <p^2/2m> + <V> = E_n to 1e-10") {
  for (int n = 1; n <= 4; ++n)
    for (int ell = 0; ell < n; ++ell)
      CHECK(hypervirial_residual(kH, n, ell) < 1e-10 * std::abs(energy0(kH, n)) + 1e-12);
}

TEST_CASE("spinor states: orthonormality for all pairs with n <= 3") {
  const auto states = enumerate_states(3);
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = i; j < states.size(); ++j) {
      const cdouble ov = spinor_overlap(kH, states[i], states[j]);
      const double expect = (i == j) ? 1.0 : 0.0;
      CHECK(std::abs(ov - expect) < 1e-10);
    }
}

TEST_CASE("spinor states: eigenstates of l^2, S^2, J^2, J_z") {
  for (const auto& b : enumerate_states(3)) {
    const auto r = spinor_eigen_residuals(b);
    CHECK(r.l2 < 1e-10);
    CHECK(r.s2 < 1e-10);
    CHECK(r.j2 < 1e-10);
    CHECK(r.jz < 1e-10);
  }
}

TEST_CASE("<p^4>: the (E-V)^2 route and the direct route agree to 1e-6") {
  const auto w = WilsonCoefficients::tree();
  for (const Species& s : {kH, kPs})
    for (int n = 1; n <= 4; ++n)
      for (int ell = 0; ell < n; ++ell) {
        QuantumNumbers b{n, ell, 0, ell, 0};
        const auto bd = energy1_oracle_breakdown(s, w, b, constants().c);
        CHECK(std::abs(bd.kinetic - bd.kinetic_alt) <= 1e-6 * std::abs(bd.kinetic));
      }
}

TEST_CASE("orbit operator: direct quadrature matches its integrated-by-parts form") {
  const auto w = WilsonCoefficients::tree();
  for (int n = 1; n <= 4; ++n)
    for (int ell = 0; ell < n; ++ell) {
      const auto bd = energy1_oracle_breakdown(kH, w, {n, ell, 0, ell, 0}, constants().c);
      CHECK(bd.hermiticity_defect < 1e-9);
    }
}

TEST_CASE("oracle equals closed form to 1e-8 for every valid state, n <= 4") {
  const auto w = WilsonCoefficients::tree();
  for (const Species& s : {kH, kPs}) {
    for (const auto& b : enumerate_states(4)) {
      const double closed = energy1(s, w, b);
      const double oracle = energy1_oracle(s, w, b);
      CHECK(std::abs(oracle - closed) <= 1e-8 * std::abs(closed));
    }
  }
}

TEST_CASE("oracle: singlet states get zero from all explicit spin terms") {
  const auto w = WilsonCoefficients::preset("hydrogen");
  const auto bd = energy1_oracle_breakdown(kH, w, {3, 2, 0, 2, 1}, constants().c);
  CHECK(std::abs(bd.spin_orbit_total) < 1e-18);
  CHECK(std::abs(bd.spin_orbit_rel) < 1e-18);
  CHECK(std::abs(bd.spin_dipole) < 1e-18);
}

TEST_CASE("spin-structure term scales as n^-3 (the resolved scaling question)") {
  // Isolate the C_{j,l} piece from the oracle and fit its n-exponent.
  const auto w = WilsonCoefficients::preset("hydrogen");
  std::vector<double> lnn, lnv;
  for (int n = 2; n <= 6; ++n) {
    const auto bd = energy1_oracle_breakdown(kH, w, {n, 1, 1, 2, 0}, constants().c);
    const double spin = bd.spin_orbit_total + bd.spin_orbit_rel + bd.spin_dipole;
    lnn.push_back(std::log(static_cast<double>(n)));
    lnv.push_back(std::log(std::abs(spin)));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = static_cast<int>(lnn.size());
  for (int i = 0; i < m; ++i) {
    sx += lnn[i];
    sy += lnv[i];
    sxx += lnn[i] * lnn[i];
    sxy += lnn[i] * lnv[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-3.0).epsilon(1e-8));
}

TEST_CASE("s-state orbit term needs exactly the delta counterterm") {
  // The printed closed form equals quadrature of the bare operator plus
  // -kappa pi |psi(0)|^2; the counterterm magnitude pins the gap.
  const auto w = WilsonCoefficients::tree();
  const double c = constants().c;
  for (int n = 1; n <= 4; ++n) {
    const auto bd = energy1_oracle_breakdown(kH, w, {n, 0, 0, 0, 0}, c);
    const double Z = kH.Z;
    const double pf = kH.m_r * kH.m_r * Z * Z * Z * Z / (kH.M * c * c);
    const double printed_orbit = pf * (1.0 - 3.0 * n) / (static_cast<double>(n) * n * n * n);
    CHECK(std::abs(bd.orbit_bare + bd.orbit_counterterm - printed_orbit) <=
          1e-9 * std::abs(printed_orbit));
    CHECK(bd.orbit_counterterm < 0.0);
  }
}

TEST_CASE("transition dipole: 1s -> 2p_z matrix element") {
  const QuantumNumbers g{1, 0, 0, 0, 0};
  const QuantumNumbers p{2, 1, 0, 1, 0};
  const auto d = transition_dipole(kH, g, p);
  const double a_Z = kH.bohr_length();
  const double d_pref = std::abs(kH.m_r * (kH.q_e / kH.m_e - kH.q_n / kH.m_n));
  const double expect = 128.0 * std::sqrt(2.0) / 243.0 * a_Z * d_pref;
  CHECK(std::abs(d[2]) == doctest::Approx(expect).epsilon(1e-10));
  CHECK(std::abs(d[0]) < 1e-12);
  CHECK(std::abs(d[1]) < 1e-12);
}

TEST_CASE("transition dipole: selection rules emerge numerically") {
  const QuantumNumbers g{1, 0, 0, 0, 0};
  // 1S -> 2S vanishes by parity.
  for (const auto& comp : transition_dipole(kH, g, {2, 0, 0, 0, 0})) CHECK(std::abs(comp) < 1e-12);
  // Spin flip vanishes by orthogonality.
  for (const auto& comp : transition_dipole(kH, g, {2, 1, 1, 2, 1})) CHECK(std::abs(comp) < 1e-12);
  // |delta m_j| <= 1 for the singlet chain.
  for (const auto& comp : transition_dipole(kH, {2, 1, 0, 1, 1}, {3, 2, 0, 2, -1}))
    CHECK(std::abs(comp) < 1e-12);
}

TEST_CASE("c6 sum over states: positive and monotone") {
  const Species fixed = make_species(1.0, 1e9, 1);  // near-fixed nucleus
  double prev = 0.0;
  for (int nb : {2, 3, 4, 5, 6}) {
    const double c6 = c6_sum_over_states(fixed, nb);
    CHECK(c6 > prev);
    prev = c6;
  }
  // n_basis = 2 alone is the classic 2p-2p contribution.
  CHECK(c6_sum_over_states(fixed, 2) == doctest::Approx(2.4636).epsilon(1e-3));
  CHECK_THROWS_AS(c6_sum_over_states(fixed, 1), std::domain_error);
}

TEST_CASE("quadrature: non-convergence raises numeric_error with diagnostics") {
  // A rapidly oscillating integrand the panel budget cannot resolve.
  const auto nasty = [](double x) { return std::sin(1e8 * x * x); };
  CHECK_THROWS_AS(integrate_adaptive(nasty, 0.0, 3.0, 1e-14, 1e-300, 32), numeric_error);
  try {
    integrate_adaptive(nasty, 0.0, 3.0, 1e-14, 1e-300, 32);
  } catch (const numeric_error& e) {
    CHECK(std::string(e.what()).find("intervals") != std::string::npos);
  }
}
