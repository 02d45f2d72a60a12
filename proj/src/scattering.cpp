#include "cobos/scattering.hpp"

#include <cmath>
#include <stdexcept>

namespace cobos {

// Atomic units: 4 pi eps0 = 1, mu0 = 4 pi / c^2, so 1/(8 pi eps0) = 1/2 and
// mu0/(8 pi) = 1/(2 c^2).

namespace {

constexpr double kREps = 1e-12;  // a.u.; below this e_r is treated as undefined

double magnetic_prefactor(double c) { return 1.0 / (2.0 * c * c); }

}  // namespace

Vec3 constituent_position(const Species& s, const CobosonConfig& cfg, bool electron) {
  if (electron) return cfg.R + (s.m_r / s.m_e) * cfg.r;
  return cfg.R - (s.m_r / s.m_n) * cfg.r;
}

PairGeometry pair_geometry(const Species& s, const CobosonConfig& c1, const CobosonConfig& c2) {
  PairGeometry g;
  g.DeltaR = c1.R - c2.R;
  const Vec3 x1[2] = {constituent_position(s, c1, false), constituent_position(s, c1, true)};
  const Vec3 x2[2] = {constituent_position(s, c2, false), constituent_position(s, c2, true)};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g.chi[i][j] = x1[i] - x2[j];
  return g;
}

double coulomb_sum(const Species& s, const CobosonConfig& c1, const CobosonConfig& c2) {
  const PairGeometry g = pair_geometry(s, c1, c2);
  const double q[2] = {s.q_n, s.q_e};
  double sum = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double d = g.chi[i][j].norm();
      if (d <= 0.0)
        throw std::domain_error("coulomb_sum: coincident constituents (singular geometry)");
      sum += q[i] * q[j] / d;
    }
  return sum;
}

Vec3 dipole_moment(const Species& s, const Vec3& r) {
  return s.m_r * (s.q_e / s.m_e - s.q_n / s.m_n) * r;
}

std::array<std::array<double, 3>, 3> quadrupole_tensor(const Species& s, const Vec3& r) {
  const double pref =
      -0.5 * s.m_r * s.m_r * (s.q_e / (s.m_e * s.m_e) + s.q_n / (s.m_n * s.m_n));
  const double rv[3] = {r.x, r.y, r.z};
  std::array<std::array<double, 3>, 3> q{};
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) q[u][v] = pref * rv[u] * rv[v];
  return q;
}

double multipole_potential_raw(const Species& s, const Vec3& r1, const Vec3& r2,
                               const Vec3& DeltaR) {
  const double dR = DeltaR.norm();
  if (!(dR > 0.0)) throw std::domain_error("multipole_potential: |DeltaR| = 0 is singular");
  const Vec3 e = DeltaR * (1.0 / dR);
  const Vec3 d1 = dipole_moment(s, r1);
  const Vec3 d2 = dipole_moment(s, r2);
  const auto q1 = quadrupole_tensor(s, r1);
  const auto q2 = quadrupole_tensor(s, r2);

  double trace = 0.0, contracted = 0.0;
  const double ev[3] = {e.x, e.y, e.z};
  for (int u = 0; u < 3; ++u) {
    trace += q1[u][u] + q2[u][u];
    for (int v = 0; v < 3; ++v) contracted += ev[u] * (q1[u][v] + q2[u][v]) * ev[v];
  }

  double bracket = s.Q * s.Q / dR;
  // Monopole-dipole cross term. Expanding sum_ij q_i q_j / |DeltaR + d1i - d2j|
  // gives -Q e.(d - d') at this order (verified against the exact constituent
  // sum for charged pairs; see docs/numerics.md).
  bracket -= s.Q * e.dot(d1 - d2) / (dR * dR);
  bracket += s.Q * (trace - 3.0 * contracted) / (dR * dR * dR);
  bracket += (d1.dot(d2) - 3.0 * e.dot(d1) * e.dot(d2)) / (dR * dR * dR);
  return 0.5 * bracket;  // 1/(8 pi eps0) in a.u.
}

double multipole_potential(const Species& s, const Vec3& r1, const Vec3& r2, const Vec3& DeltaR) {
  return 2.0 * multipole_potential_raw(s, r1, r2, DeltaR);
}

double dd_angular(int Z, double a, double DeltaR_mag, double theta) {
  if (!(DeltaR_mag > 0.0)) throw std::domain_error("dd_angular: DeltaR must be positive");
  const double zm1 = static_cast<double>(Z - 1);
  const double ct = std::cos(theta);
  return zm1 * zm1 / DeltaR_mag +
         static_cast<double>(Z) * a * a * (1.0 - 3.0 * ct * ct) /
             (DeltaR_mag * DeltaR_mag * DeltaR_mag);
}

PotentialComponents potential_components(const Species& s, const WilsonCoefficients& w,
                                         const CobosonConfig& c1, const CobosonConfig& c2) {
  const PairGeometry g = pair_geometry(s, c1, c2);
  const double c = constants().c;
  const double q[2] = {s.q_n, s.q_e};
  const double m[2] = {s.m_n, s.m_e};
  const double cF[2] = {w.cF_n, w.cF_e};
  const Vec3 spin1[2] = {c1.spin_n, c1.spin_e};
  const Vec3 spin2[2] = {c2.spin_n, c2.spin_e};

  PotentialComponents out;
  const double r1n = c1.r.norm();
  const double r2n = c2.r.norm();
  out.scale_warning = g.DeltaR.norm() < 2.0 * (r1n + r2n);
  const bool r_gate = (r1n < kREps) || (r2n < kREps);
  out.c_correction_gated = r_gate;
  const Vec3 e_r1 = r_gate ? Vec3{} : c1.r.normalized();
  const Vec3 e_r2 = r_gate ? Vec3{} : c2.r.normalized();

  const double mag = magnetic_prefactor(c);  // mu0/(8 pi)
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Vec3 chi = g.chi[i][j];
      const double x = chi.norm();
      if (x <= 0.0)
        throw std::domain_error("potential_components: coincident constituents in pair (" +
                                std::string(i == 0 ? "n" : "e") + "," +
                                std::string(j == 0 ? "n" : "e") + ")");
      const Vec3 e_chi = chi * (1.0 / x);
      const double x3 = x * x * x;
      const double qq = q[i] * q[j];

      // C row: Coulomb plus the mass-asymmetry correction.
      double C = qq / (2.0 * x);
      if (!r_gate) {
        C += (s.delta_m / s.M) * e_chi.dot(e_r1 - e_r2) / (s.M * c * c) * (s.q_e * s.q_n) * qq /
             (4.0 * x * x);
      }

      // LL row: orbital moments L_k = chi x P_k plus retardation.
      const Vec3 L1 = chi.cross(c1.P);
      const Vec3 L2 = chi.cross(c2.P);
      const double LL = -mag * qq / (s.M * s.M) / x3 *
                        (0.5 * L1.dot(L2) + chi.dot(c1.P) * chi.dot(c2.P));

      // LS row: effective orbital moment against spin moments
      // mu_{k,i} = cF^(i) q_i s_{k,i}/m_i.
      const Vec3 mu1 = (cF[i] * q[i] / m[i]) * spin1[i];
      const Vec3 mu2 = (cF[j] * q[j] / m[j]) * spin2[j];
      double LS = (q[i] / s.M) * (L1 - L2).dot((q[j] / q[i]) * mu1 + mu2);
      LS += -0.5 * qq / (s.M * m[i]) * L1.dot(spin1[i]);
      LS += 0.5 * qq / (s.M * m[j]) * L2.dot(spin2[j]);
      LS *= -mag / x3;

      // SS row: magnetic dipole-dipole.
      const double SS =
          -mag / x3 * (mu1.dot(mu2) - 3.0 * mu1.dot(e_chi) * mu2.dot(e_chi));

      out.C += C;
      out.LL += LL;
      out.LS += LS;
      out.SS += SS;
    }

  // Physical pair energy: the equation of motion applies 2 V_scatt.
  out.C *= 2.0;
  out.LL *= 2.0;
  out.LS *= 2.0;
  out.SS *= 2.0;
  return out;
}

}  // namespace cobos
