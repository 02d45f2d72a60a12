#include "cobos/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "cobos/quadrature.hpp"
#include "cobos/radial.hpp"
#include "cobos/spectrum.hpp"

namespace cobos {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double real_or_throw(const cdouble& z, const char* what) {
  if (std::abs(z.imag()) > 1e-10 * std::max(1.0, std::abs(z.real())))
    throw numeric_error(std::string("expected real expectation value in ") + what);
  return z.real();
}

// Direction cosines as angular functions.
cdouble unit_x(double th, double ph) { return std::sin(th) * std::cos(ph); }
cdouble unit_y(double th, double ph) { return std::sin(th) * std::sin(ph); }
cdouble unit_z(double th, double /*ph*/) { return std::cos(th); }

}  // namespace

OracleBreakdown energy1_oracle_breakdown(const Species& s, const WilsonCoefficients& w,
                                         const QuantumNumbers& beta, double c) {
  validate(beta);
  if (!(c > 0.0)) throw std::domain_error("energy1_oracle: c must be positive");
  OracleBreakdown out;

  const double Z = static_cast<double>(s.Z);
  const double kappa = Z / (s.m_r * s.M * c * c);  // -q_e q_n/(4 pi eps0 m_r M c^2)
  const AlphaCoefficients a = alpha_coefficients(w, s, 1.0 / c);
  const RadialFunction R(s, beta.n, beta.ell);
  const double rmax = R.r_max();
  const double E0 = energy0(s, beta.n);

  // Kinetic correction, two independent routes for <p^4>.
  const double p4_route_a =
      4.0 * s.m_r * s.m_r *
      integrate([&](double r) {
        const double v = R.value(r);
        const double ev = E0 + Z / r;
        return v * v * ev * ev * r * r;
      }, 0.0, rmax, 1e-13, 1e-30);
  const double p4_route_b = integrate([&](double r) {
    const double g = R.p2(r);
    return g * g * r * r;
  }, 0.0, rmax, 1e-13, 1e-30);
  const double me3 = s.m_e * s.m_e * s.m_e;
  const double mn3 = s.m_n * s.m_n * s.m_n;
  const double kin_pref = -(me3 + mn3) / (8.0 * s.m_r * s.m_r * s.m_r * c * c * s.M * s.M * s.M);
  out.kinetic = kin_pref * p4_route_a;
  out.kinetic_alt = kin_pref * p4_route_b;

  // Orbit term: -kappa <(l^2/2 + (r.p)^2)/r^3> with (r.p) = -i r d/dr
  // applied twice, exactly as written.
  const double rp2_direct = integrate([&](double r) {
    return -R.value(r) * (r * R.d2(r) + R.d1(r));
  }, 0.0, rmax, 1e-13, 1e-30);
  const double rp2_by_parts = integrate([&](double r) {
    const double d = R.d1(r);
    return r * d * d;
  }, 0.0, rmax, 1e-13, 1e-30);
  out.hermiticity_defect =
      std::abs(rp2_direct - rp2_by_parts) / std::max(std::abs(rp2_direct), 1e-300);
  double inv_r3 = 0.0;
  if (beta.ell >= 1)
    inv_r3 = integrate([&](double r) {
      const double v = R.value(r);
      return v * v / r;
    }, 0.0, rmax, 1e-13, 1e-30);
  out.orbit_bare = -kappa * (0.5 * beta.ell * (beta.ell + 1.0) * inv_r3 + rp2_direct);

  // Local delta terms through |psi(0)|^2.
  const double psi0sq = density_at_origin(s, beta.n, beta.ell);
  out.orbit_counterterm = -kappa * kPi * psi0sq;
  out.darwin = kappa * a.alpha_D * kPi * psi0sq;

  // Spin/angular sector on the exact |l m> x |s_n s_e> basis.
  const auto v = spinor_coefficients(beta);
  const auto sn = spin_n_operators();
  const auto se = spin_e_operators();
  const CMatrix id_ang = CMatrix::identity(2 * beta.ell + 1);
  CMatrix sdot = sn[0] * se[0] + sn[1] * se[1] + sn[2] * se[2];
  const double sn_se = real_or_throw(expectation(kron(id_ang, sdot), v), "s_n.s_e");
  out.contact = kappa * a.alpha_ss * kPi * psi0sq * sn_se;

  if (beta.ell >= 1) {
    const auto lop = l_operators(beta.ell);
    const int dim = (2 * beta.ell + 1) * 4;
    CMatrix ldotS(dim, dim);
    CMatrix ldots(dim, dim);
    for (int u = 0; u < 3; ++u) {
      ldotS = ldotS + kron(lop[u], sn[u] + se[u]);
      const CMatrix srel = (1.0 / s.M) * (s.m_n * se[u] - s.m_e * sn[u]);
      ldots = ldots + kron(lop[u], srel);
    }
    const double exp_lS = real_or_throw(expectation(ldotS, v), "l.S");
    const double exp_ls = real_or_throw(expectation(ldots, v), "l.s");

    using AngFn = std::function<cdouble(double, double)>;
    const AngFn dir[3] = {unit_x, unit_y, unit_z};
    CMatrix sne = cdouble(-1.0) * kron(id_ang, sdot);
    for (int u = 0; u < 3; ++u)
      for (int vcomp = 0; vcomp < 3; ++vcomp) {
        const AngFn f = [&, u, vcomp](double th, double ph) {
          return dir[u](th, ph) * dir[vcomp](th, ph);
        };
        sne = sne + cdouble(3.0) * kron(angular_matrix(beta.ell, beta.ell, f), sn[u] * se[vcomp]);
      }
    const double exp_sne = real_or_throw(expectation(sne, v), "S_ne");

    out.spin_orbit_total = kappa * a.alpha_lS * inv_r3 * exp_lS;
    out.spin_orbit_rel = kappa * a.alpha_ls * inv_r3 * exp_ls;
    out.spin_dipole = kappa * w.cF_e * w.cF_n * inv_r3 * exp_sne;
  }
  // l = 0: the angular averages of l.S, l.s and S_ne vanish identically
  // (the 1x1 angular matrix of 3 r_u r_v is delta_uv), so the 1/r^3 spin
  // terms carry no s-state contribution.

  out.total = out.kinetic + out.orbit_bare + out.orbit_counterterm + out.darwin + out.contact +
              out.spin_orbit_total + out.spin_orbit_rel + out.spin_dipole;
  return out;
}

double energy1_oracle_with_c(const Species& s, const WilsonCoefficients& w,
                             const QuantumNumbers& beta, double c) {
  return energy1_oracle_breakdown(s, w, beta, c).total;
}

double energy1_oracle(const Species& s, const WilsonCoefficients& w, const QuantumNumbers& beta) {
  return energy1_oracle_with_c(s, w, beta, constants().c);
}

cdouble spinor_overlap(const Species& s, const QuantumNumbers& b1, const QuantumNumbers& b2) {
  validate(b1);
  validate(b2);
  if (b1.ell != b2.ell) return 0.0;  // exact angular orthogonality
  const RadialFunction R1(s, b1.n, b1.ell);
  const RadialFunction R2(s, b2.n, b2.ell);
  const double radial = integrate([&](double r) { return R1.value(r) * R2.value(r) * r * r; }, 0.0,
                                  std::max(R1.r_max(), R2.r_max()), 1e-13, 1e-16);
  return radial * dot(spinor_coefficients(b1), spinor_coefficients(b2));
}

SpinorEigenResiduals spinor_eigen_residuals(const QuantumNumbers& beta) {
  validate(beta);
  const auto v = spinor_coefficients(beta);
  const int dim = static_cast<int>(v.size());
  const auto lop = l_operators(beta.ell);
  const auto sn = spin_n_operators();
  const auto se = spin_e_operators();
  const CMatrix id_ang = CMatrix::identity(2 * beta.ell + 1);
  const CMatrix id4 = CMatrix::identity(4);

  CMatrix l2(dim, dim), s2(dim, dim), j2(dim, dim);
  CMatrix jz = kron(lop[2], id4) + kron(id_ang, sn[2] + se[2]);
  for (int u = 0; u < 3; ++u) {
    l2 = l2 + kron(lop[u] * lop[u], id4);
    const CMatrix su = sn[u] + se[u];
    s2 = s2 + kron(id_ang, su * su);
    const CMatrix ju = kron(lop[u], id4) + kron(id_ang, su);
    j2 = j2 + ju * ju;
  }

  auto residual = [&](const CMatrix& op, double lambda) {
    auto r = mat_vec(op, v);
    double nrm = 0.0;
    for (size_t i = 0; i < r.size(); ++i) {
      const cdouble d = r[i] - lambda * v[i];
      nrm += std::norm(d);
    }
    return std::sqrt(nrm);
  };

  SpinorEigenResiduals res;
  res.l2 = residual(l2, beta.ell * (beta.ell + 1.0));
  res.s2 = residual(s2, beta.S * (beta.S + 1.0));
  res.j2 = residual(j2, beta.j * (beta.j + 1.0));
  res.jz = residual(jz, beta.m_j);
  return res;
}

std::array<cdouble, 3> transition_dipole(const Species& s, const QuantumNumbers& beta,
                                         const QuantumNumbers& beta_prime) {
  validate(beta);
  validate(beta_prime);
  const double d_pref = s.m_r * (s.q_e / s.m_e - s.q_n / s.m_n);
  const RadialFunction Ra(s, beta.n, beta.ell);
  const RadialFunction Rb(s, beta_prime.n, beta_prime.ell);
  const double radial = integrate([&](double r) { return Ra.value(r) * Rb.value(r) * r * r * r; },
                                  0.0, std::max(Ra.r_max(), Rb.r_max()), 1e-13, 1e-16);
  const auto va = spinor_coefficients(beta);
  const auto vb = spinor_coefficients(beta_prime);
  const CMatrix id4 = CMatrix::identity(4);
  using AngFn = std::function<cdouble(double, double)>;
  const AngFn dir[3] = {unit_x, unit_y, unit_z};
  std::array<cdouble, 3> out{};
  for (int u = 0; u < 3; ++u) {
    const CMatrix ang = angular_matrix(beta.ell, beta_prime.ell, dir[u]);
    out[u] = d_pref * radial * dot(va, mat_vec(kron(ang, id4), vb));
  }
  return out;
}

double c6_sum_over_states(const Species& s, int n_basis) {
  if (n_basis < 2) throw std::domain_error("c6_sum_over_states: n_basis must be >= 2");
  const double d_pref = s.m_r * (s.q_e / s.m_e - s.q_n / s.m_n);
  const RadialFunction R10(s, 1, 0);
  const double E1s = energy0(s, 1);

  std::vector<double> z2(n_basis + 1, 0.0);  // |<1s| d_z |np,0>|^2 / d_pref^2
  std::vector<double> dE(n_basis + 1, 0.0);
  for (int n = 2; n <= n_basis; ++n) {
    const RadialFunction Rn1(s, n, 1);
    const double radial =
        integrate([&](double r) { return R10.value(r) * Rn1.value(r) * r * r * r; }, 0.0,
                  std::max(R10.r_max(), Rn1.r_max()), 1e-13, 1e-16);
    const double zmat = radial / std::sqrt(3.0);  // <Y00|cos(theta)|Y10> = 1/sqrt(3)
    z2[n] = zmat * zmat;
    dE[n] = energy0(s, n) - E1s;
  }
  // Pair sum of |<x x' + y y' - 2 z z'>|^2 / (dE + dE'): the spherical-basis
  // bookkeeping collapses to the factor 6 z^2 z'^2.
  double c6 = 0.0;
  const double d4 = d_pref * d_pref * d_pref * d_pref;
  for (int n = 2; n <= n_basis; ++n)
    for (int m = 2; m <= n_basis; ++m) c6 += 6.0 * d4 * z2[n] * z2[m] / (dE[n] + dE[m]);
  return c6;
}

double hypervirial_residual(const Species& s, int n, int ell) {
  const RadialFunction R(s, n, ell);
  const double rmax = R.r_max();
  const double kin = integrate([&](double r) { return R.value(r) * R.p2(r) * r * r; }, 0.0, rmax,
                               1e-13, 1e-30) /
                     (2.0 * s.m_r);
  const double pot = -static_cast<double>(s.Z) *
                     integrate([&](double r) { return R.value(r) * R.value(r) * r; }, 0.0, rmax,
                               1e-13, 1e-30);
  return std::abs(kin + pot - energy0(s, n));
}

}  // namespace cobos
