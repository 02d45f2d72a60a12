#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cobos/constants.hpp"

namespace cobos {

using cdouble = std::complex<double>;

/// 1D periodic grid, x_i = -L/2 + i dx, wavenumbers k_m = 2 pi m / L.
struct GpeGrid {
  double length = 1.0;
  int points = 0;

  double dx() const { return length / points; }
  double x(int i) const { return -0.5 * length + i * dx(); }
  double k(int i) const {
    const int m = (i <= points / 2) ? i : i - points;
    return 2.0 * 3.141592653589793238462643383279502884 * m / length;
  }
};

struct GpeMode {
  std::string label;
  double mass = 1.0;            // M_alpha
  double e_offset = 0.0;        // M_alpha c^2 + E^(1)_alpha (+ diagonal light shift)
  std::vector<double> v_ext;    // per grid point; empty means zero
};

/// Eq.-of-motion data for the multi-mode mean field: per-mode masses and
/// offsets, Hermitian mode coupling Omega_{ab}(x), contact tensor
/// eta_{a nu; b mu}, and the quartic kinetic correction -P^4/(8 M^3 c^2)
/// with the bare mass M (mode independent, as printed).
struct GpeProblem {
  GpeGrid grid;
  std::vector<GpeMode> modes;
  // Hermitian coupling; size K*K (constant) or K*K*N (per point, fastest
  // index x). Empty means uncoupled.
  std::vector<cdouble> coupling;
  bool coupling_per_point = false;
  // Dense rank-4 contact tensor, index ((a*K + nu)*K + b)*K + mu; empty = 0.
  std::vector<cdouble> eta;
  bool include_P4 = false;
  double mass_p4 = 0.0;  // bare M for the quartic term; required if include_P4
  double c = 0.0;        // speed of light; defaults to the pinned value
  // Common energy subtracted from every offset inside the propagator
  // (physical observables are gauge invariant; keeps rest-energy phases slow).
  double gauge_offset = 0.0;

  int n_modes() const { return static_cast<int>(modes.size()); }
  cdouble eta_at(int a, int nu, int b, int mu) const {
    const int K = n_modes();
    return eta.empty() ? cdouble(0.0) : eta[((static_cast<size_t>(a) * K + nu) * K + b) * K + mu];
  }
  cdouble coupling_at(int a, int b, int ix) const {
    const int K = n_modes();
    if (coupling.empty()) return 0.0;
    if (!coupling_per_point) return coupling[static_cast<size_t>(a) * K + b];
    return coupling[(static_cast<size_t>(a) * K + b) * grid.points + ix];
  }

  /// Checks shapes, Hermiticity of coupling and of eta under
  /// (a,nu;b,mu) <-> (b,mu;a,nu) conjugation. Throws std::invalid_argument.
  void validate() const;
};

struct GpeState {
  std::vector<std::vector<cdouble>> psi;  // [mode][grid point]
  double t = 0.0;
};

struct GpeObservables {
  std::vector<double> norm_per_mode;
  double norm_total = 0.0;
  double energy = 0.0;  // discrete functional, physical offsets included
  double center = 0.0;  // total-density first moment
  double width = 0.0;   // total-density standard deviation
  std::vector<double> populations;    // norm fractions
  double relative_phase_01 = 0.0;     // arg <psi_0|psi_1>, 0 if single mode
};

struct StepDiagnostics {
  bool cfl_warning = false;
  double max_kinetic_energy = 0.0;
};

struct GroundStateResult {
  GpeState state;
  double energy = 0.0;
  double chemical_potential = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> energy_history;
};

/// Strang-split spectral propagator. Owns its FFT plans and scratch; one
/// simulator per problem, states move through it.
class GpeSimulator {
 public:
  explicit GpeSimulator(GpeProblem problem);
  ~GpeSimulator();
  GpeSimulator(const GpeSimulator&) = delete;
  GpeSimulator& operator=(const GpeSimulator&) = delete;

  const GpeProblem& problem() const { return problem_; }

  /// One real-time Strang step: exact spectral kinetic half steps around a
  /// full local step (offsets + trap + coupling + frozen-density contact
  /// with one Picard correction). Throws numeric_error on NaN.
  void step(GpeState& state, double dt);

  /// Imaginary-time step (exp(-H dtau)), no renormalization.
  void step_imaginary(GpeState& state, double dtau);

  GpeObservables observables(const GpeState& state) const;

  /// Scalar envelope multiplying the coupling matrix, evaluated at the
  /// midpoint of each local step (drives Omega_{ab}(x, t) with a pulse
  /// shape). Default: constant 1.
  void set_coupling_envelope(std::function<double(double /*t*/)> envelope);

  /// Imaginary-time relaxation from a broad Gaussian guess weighted by
  /// mode_weights (total norm = sum of weights). Energy is monotonically
  /// nonincreasing; stops when the relative energy change per step drops
  /// below tol. Throws numeric_error if max_iter is hit first.
  GroundStateResult ground_state(const std::vector<double>& mode_weights, double tol,
                                 double dtau = 0.0, int max_iter = 200000);

  const StepDiagnostics& last_diagnostics() const { return diag_; }

  /// Plane wave exp(i k_{index} x) with given per-mode amplitudes.
  GpeState plane_wave_state(const std::vector<cdouble>& amplitudes, int k_index) const;
  /// Gaussian (x0, sigma) boosted by exp(i k x), normalized per mode to
  /// |amplitude|^2.
  struct GaussianSpec {
    double x0 = 0.0;
    double sigma = 1.0;
    double k = 0.0;
    double amplitude = 1.0;
  };
  GpeState gaussian_state(const std::vector<GaussianSpec>& specs) const;

 private:
  struct Impl;
  GpeProblem problem_;
  StepDiagnostics diag_;
  std::unique_ptr<Impl> impl_;
  std::function<double(double)> coupling_envelope_;

  void kinetic_half(GpeState& state, double dt, bool imaginary);
  void local_full(GpeState& state, double dt, bool imaginary, double t_mid);
  double functional_energy(const GpeState& state) const;
};

}  // namespace cobos
