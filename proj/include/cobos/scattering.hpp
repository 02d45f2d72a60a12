#pragma once

#include <array>
#include <string>

#include "cobos/constants.hpp"
#include "cobos/vec3.hpp"
#include "cobos/wilson.hpp"

namespace cobos {

/// Classical phase-space configuration of one coboson: c.m. position and
/// momentum, relative coordinate, and classical spin vectors for the two
/// constituents (magnitude hbar/2 unless stated otherwise).
struct CobosonConfig {
  Vec3 R;
  Vec3 r;
  Vec3 P;
  Vec3 spin_n{0.0, 0.0, 0.5};
  Vec3 spin_e{0.0, 0.0, -0.5};
};

/// Constituent positions x_n = R - (m_r/m_n) r, x_e = R + (m_r/m_e) r.
Vec3 constituent_position(const Species& s, const CobosonConfig& cfg, bool electron);

/// Geometry of a coboson pair: c.m. separation and the four constituent
/// separations chi[i][j] = x_{1,i} - x_{2,j} with i, j in {n=0, e=1}.
struct PairGeometry {
  Vec3 DeltaR;
  std::array<std::array<Vec3, 2>, 2> chi;
};

PairGeometry pair_geometry(const Species& s, const CobosonConfig& c1, const CobosonConfig& c2);

/// Exact constituent Coulomb sum, the physical pair energy
/// sum_{ij} q_i q_j / (4 pi eps0 |chi_ij|) in hartree.
/// Throws std::domain_error when constituents coincide.
double coulomb_sum(const Species& s, const CobosonConfig& c1, const CobosonConfig& c2);

/// Multipole expansion of the pair Coulomb energy: monopole, monopole-dipole,
/// monopole-quadrupole and dipole-dipole terms evaluated from the two
/// relative coordinates. Physical normalization (twice the raw bracket);
/// multipole_potential_raw returns the bare bracket with its 1/(8 pi eps0).
double multipole_potential(const Species& s, const Vec3& r1, const Vec3& r2, const Vec3& DeltaR);
double multipole_potential_raw(const Species& s, const Vec3& r1, const Vec3& r2,
                               const Vec3& DeltaR);

/// Generalized electric dipole moment d = m_r (q_e/m_e - q_n/m_n) r and
/// quadrupole tensor Q_uv = -r_u r_v m_r^2 (q_e/m_e^2 + q_n/m_n^2)/2.
Vec3 dipole_moment(const Species& s, const Vec3& r);
std::array<std::array<double, 3>, 3> quadrupole_tensor(const Species& s, const Vec3& r);

/// Angular shape of the neutral-pair potential for r = r' = a e_r:
/// (Z-1)^2/dR + Z a^2 (1 - 3 cos^2 theta)/dR^3 (heavy-nucleus limit,
/// proportional to the energy; the 1/(8 pi eps0) prefactor is dropped).
double dd_angular(int Z, double a, double DeltaR_mag, double theta);

/// Table of scattering potential components at a classical configuration,
/// each summed over the four constituent pairs and carrying the physical
/// factor two. Flags report the validity guard (multipole scale separation)
/// and the C-row unit-vector gate at r -> 0.
struct PotentialComponents {
  double C = 0.0;
  double LL = 0.0;
  double LS = 0.0;
  double SS = 0.0;
  bool scale_warning = false;       // |DeltaR| < 2 (|r1| + |r2|)
  bool c_correction_gated = false;  // e_{r_k} undefined, correction dropped
  double sum() const { return C + LL + LS + SS; }
};

PotentialComponents potential_components(const Species& s, const WilsonCoefficients& w,
                                         const CobosonConfig& c1, const CobosonConfig& c2);

}  // namespace cobos
