#include "cobos/gpe.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "cobos/quadrature.hpp"  // numeric_error

namespace cobos {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

void GpeProblem::validate() const {
  const int K = n_modes();
  const int N = grid.points;
  if (K < 1) throw std::invalid_argument("GpeProblem: needs at least one mode");
  if (N < 4) throw std::invalid_argument("GpeProblem: grid.points must be >= 4");
  if (!(grid.length > 0.0)) throw std::invalid_argument("GpeProblem: grid.length must be positive");
  for (const auto& m : modes) {
    if (!(m.mass > 0.0)) throw std::invalid_argument("GpeProblem: mode mass must be positive");
    if (!m.v_ext.empty() && static_cast<int>(m.v_ext.size()) != N)
      throw std::invalid_argument("GpeProblem: v_ext size must match grid.points");
  }
  if (include_P4) {
    if (!(mass_p4 > 0.0))
      throw std::invalid_argument("GpeProblem: include_P4 requires a positive mass_p4");
    if (!(c > 0.0)) throw std::invalid_argument("GpeProblem: include_P4 requires c > 0");
  }
  if (!coupling.empty()) {
    const size_t expect = coupling_per_point ? static_cast<size_t>(K) * K * N
                                             : static_cast<size_t>(K) * K;
    if (coupling.size() != expect) throw std::invalid_argument("GpeProblem: coupling size mismatch");
    const int npts = coupling_per_point ? N : 1;
    for (int ix = 0; ix < npts; ++ix)
      for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) {
          const cdouble diff = coupling_at(a, b, ix) - std::conj(coupling_at(b, a, ix));
          if (std::abs(diff) > 1e-12)
            throw std::invalid_argument("GpeProblem: coupling matrix is not Hermitian");
        }
  }
  if (!eta.empty()) {
    if (eta.size() != static_cast<size_t>(K) * K * K * K)
      throw std::invalid_argument("GpeProblem: eta must be K^4 dense");
    for (int a = 0; a < K; ++a)
      for (int nu = 0; nu < K; ++nu)
        for (int b = 0; b < K; ++b)
          for (int mu = 0; mu < K; ++mu) {
            const cdouble diff = eta_at(a, nu, b, mu) - std::conj(eta_at(b, mu, a, nu));
            if (std::abs(diff) > 1e-12)
              throw std::invalid_argument(
                  "GpeProblem: eta violates Hermiticity under (a,nu;b,mu) <-> (b,mu;a,nu)");
          }
  }
}

struct GpeSimulator::Impl {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  fftw_complex* buf = nullptr;
  int n = 0;

  explicit Impl(int npoints) : n(npoints) {
    buf = fftw_alloc_complex(npoints);
    // ESTIMATE keeps planning deterministic (byte-identical reruns).
    forward = fftw_plan_dft_1d(npoints, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(npoints, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Impl() {
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(buf);
  }

  void fft(std::vector<cdouble>& v, bool fwd) {
    for (int i = 0; i < n; ++i) {
      buf[i][0] = v[i].real();
      buf[i][1] = v[i].imag();
    }
    fftw_execute(fwd ? forward : backward);
    const double scale = fwd ? 1.0 : 1.0 / n;
    for (int i = 0; i < n; ++i) v[i] = cdouble(buf[i][0] * scale, buf[i][1] * scale);
  }
};

GpeSimulator::GpeSimulator(GpeProblem problem) : problem_(std::move(problem)) {
  if (problem_.c <= 0.0) problem_.c = constants().c;
  problem_.validate();
  impl_ = std::make_unique<Impl>(problem_.grid.points);
}

GpeSimulator::~GpeSimulator() = default;

namespace {

double kinetic_energy_of_mode(const GpeProblem& p, int mode, double k) {
  double e = k * k / (2.0 * p.modes[mode].mass);
  if (p.include_P4) e -= k * k * k * k / (8.0 * p.mass_p4 * p.mass_p4 * p.mass_p4 * p.c * p.c);
  return e;
}

}  // namespace

void GpeSimulator::kinetic_half(GpeState& state, double dt, bool imaginary) {
  const int N = problem_.grid.points;
  double emax = 0.0;
  for (int a = 0; a < problem_.n_modes(); ++a) {
    impl_->fft(state.psi[a], true);
    for (int i = 0; i < N; ++i) {
      const double ek = kinetic_energy_of_mode(problem_, a, problem_.grid.k(i));
      emax = std::max(emax, std::abs(ek));
      const cdouble phase = imaginary ? cdouble(std::exp(-ek * 0.5 * dt), 0.0)
                                      : std::exp(cdouble(0.0, -ek * 0.5 * dt));
      state.psi[a][i] *= phase;
    }
    impl_->fft(state.psi[a], false);
  }
  diag_.max_kinetic_energy = emax;
  diag_.cfl_warning = (std::abs(dt) >= 2.0 * kPi / std::max(emax, 1e-300));
}

void GpeSimulator::set_coupling_envelope(std::function<double(double)> envelope) {
  coupling_envelope_ = std::move(envelope);
}

void GpeSimulator::local_full(GpeState& state, double dt, bool imaginary, double t_mid) {
  const int K = problem_.n_modes();
  const int N = problem_.grid.points;
  using Mat = Eigen::MatrixXcd;
  using Vec = Eigen::VectorXcd;
  const double envelope = coupling_envelope_ ? coupling_envelope_(t_mid) : 1.0;

  auto build_h = [&](int ix, const Vec& psi_point) {
    Mat h = Mat::Zero(K, K);
    for (int a = 0; a < K; ++a) {
      double diag = problem_.modes[a].e_offset - problem_.gauge_offset;
      if (!problem_.modes[a].v_ext.empty()) diag += problem_.modes[a].v_ext[ix];
      h(a, a) = diag;
      for (int b = 0; b < K; ++b) {
        h(a, b) += envelope * problem_.coupling_at(a, b, ix);
        cdouble nl(0.0);
        for (int nu = 0; nu < K; ++nu)
          for (int mu = 0; mu < K; ++mu)
            nl += problem_.eta_at(a, nu, b, mu) * std::conj(psi_point(nu)) * psi_point(mu);
        h(a, b) += nl;
      }
    }
    return h;
  };

  auto propagate = [&](const Mat& h, const Vec& v) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Vec w = es.eigenvectors().adjoint() * v;
    for (int a = 0; a < K; ++a) {
      const double lam = es.eigenvalues()(a);
      const cdouble ph = imaginary ? cdouble(std::exp(-lam * dt), 0.0)
                                   : std::exp(cdouble(0.0, -lam * dt));
      w(a) *= ph;
    }
    return Vec(es.eigenvectors() * w);
  };

  for (int ix = 0; ix < N; ++ix) {
    Vec v(K);
    for (int a = 0; a < K; ++a) v(a) = state.psi[a][ix];
    const Mat h0 = build_h(ix, v);
    if (problem_.eta.empty()) {
      const Vec out = propagate(h0, v);
      for (int a = 0; a < K; ++a) state.psi[a][ix] = out(a);
    } else {
      // Frozen density plus one Picard correction keeps second order.
      const Vec mid = propagate(h0, v);
      const Mat h1 = build_h(ix, mid);
      const Vec out = propagate(0.5 * (h0 + h1), v);
      for (int a = 0; a < K; ++a) state.psi[a][ix] = out(a);
    }
  }
}

void GpeSimulator::step(GpeState& state, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("GpeSimulator::step: dt must be positive");
  kinetic_half(state, dt, false);
  local_full(state, dt, false, state.t + 0.5 * dt);
  kinetic_half(state, dt, false);
  state.t += dt;
  for (const auto& mode_psi : state.psi)
    for (const cdouble& z : mode_psi)
      if (std::isnan(z.real()) || std::isnan(z.imag()))
        throw numeric_error("GpeSimulator::step: NaN in field at t = " + std::to_string(state.t));
}

void GpeSimulator::step_imaginary(GpeState& state, double dtau) {
  if (!(dtau > 0.0)) throw std::domain_error("step_imaginary: dtau must be positive");
  kinetic_half(state, dtau, true);
  local_full(state, dtau, true, state.t);
  kinetic_half(state, dtau, true);
}

double GpeSimulator::functional_energy(const GpeState& state) const {
  const int K = problem_.n_modes();
  const int N = problem_.grid.points;
  const double dx = problem_.grid.dx();
  double energy = 0.0;

  // Spectral kinetic part (Parseval with the unnormalized forward FFT).
  for (int a = 0; a < K; ++a) {
    std::vector<cdouble> psihat = state.psi[a];
    impl_->fft(psihat, true);
    double ek = 0.0;
    for (int i = 0; i < N; ++i)
      ek += kinetic_energy_of_mode(problem_, a, problem_.grid.k(i)) * std::norm(psihat[i]);
    energy += ek * dx / N;
  }

  // Local and quartic parts; physical offsets (gauge added back). The
  // coupling envelope is sampled at the state's own time.
  const double envelope = coupling_envelope_ ? coupling_envelope_(state.t) : 1.0;
  for (int ix = 0; ix < N; ++ix) {
    for (int a = 0; a < K; ++a) {
      double diag = problem_.modes[a].e_offset;
      if (!problem_.modes[a].v_ext.empty()) diag += problem_.modes[a].v_ext[ix];
      energy += diag * std::norm(state.psi[a][ix]) * dx;
      for (int b = 0; b < K; ++b) {
        const cdouble om = envelope * problem_.coupling_at(a, b, ix);
        if (om != cdouble(0.0))
          energy += (std::conj(state.psi[a][ix]) * om * state.psi[b][ix]).real() * dx;
        for (int nu = 0; nu < K; ++nu)
          for (int mu = 0; mu < K; ++mu) {
            const cdouble g = problem_.eta_at(a, nu, b, mu);
            if (g != cdouble(0.0))
              energy += 0.5 *
                        (g * std::conj(state.psi[a][ix]) * std::conj(state.psi[nu][ix]) *
                         state.psi[b][ix] * state.psi[mu][ix])
                            .real() *
                        dx;
          }
      }
    }
  }
  return energy;
}

GpeObservables GpeSimulator::observables(const GpeState& state) const {
  const int K = problem_.n_modes();
  const int N = problem_.grid.points;
  const double dx = problem_.grid.dx();
  GpeObservables obs;
  obs.norm_per_mode.resize(K, 0.0);
  for (int a = 0; a < K; ++a)
    for (int i = 0; i < N; ++i) obs.norm_per_mode[a] += std::norm(state.psi[a][i]) * dx;
  for (double nm : obs.norm_per_mode) obs.norm_total += nm;

  double cx = 0.0, cxx = 0.0;
  for (int i = 0; i < N; ++i) {
    double rho = 0.0;
    for (int a = 0; a < K; ++a) rho += std::norm(state.psi[a][i]);
    const double x = problem_.grid.x(i);
    cx += x * rho * dx;
    cxx += x * x * rho * dx;
  }
  obs.center = cx / obs.norm_total;
  obs.width = std::sqrt(std::max(0.0, cxx / obs.norm_total - obs.center * obs.center));

  obs.populations.resize(K, 0.0);
  for (int a = 0; a < K; ++a) obs.populations[a] = obs.norm_per_mode[a] / obs.norm_total;
  if (K >= 2) {
    cdouble ov(0.0);
    for (int i = 0; i < N; ++i) ov += std::conj(state.psi[0][i]) * state.psi[1][i];
    obs.relative_phase_01 = std::arg(ov);
  }
  obs.energy = functional_energy(state);
  return obs;
}

GroundStateResult GpeSimulator::ground_state(const std::vector<double>& mode_weights, double tol,
                                             double dtau, int max_iter) {
  const int K = problem_.n_modes();
  if (static_cast<int>(mode_weights.size()) != K)
    throw std::invalid_argument("ground_state: one weight per mode required");
  if (!(tol > 0.0)) throw std::domain_error("ground_state: tol must be positive");
  double target_norm = 0.0;
  for (double w : mode_weights) target_norm += w;
  if (!(target_norm > 0.0)) throw std::domain_error("ground_state: weights sum must be positive");

  // Default relaxation step from the trap/grid scales.
  if (dtau <= 0.0) {
    double escale = 1.0;
    for (int a = 0; a < K; ++a) {
      if (!problem_.modes[a].v_ext.empty()) {
        double vmax = 0.0;
        for (double v : problem_.modes[a].v_ext) vmax = std::max(vmax, std::abs(v));
        escale = std::max(escale, vmax * 0.1);
      }
    }
    dtau = 0.02 / escale;
  }

  // Broad Gaussian guess per mode.
  std::vector<GaussianSpec> specs(K);
  for (int a = 0; a < K; ++a) {
    specs[a].x0 = 0.0;
    specs[a].sigma = problem_.grid.length / 8.0;
    specs[a].k = 0.0;
    specs[a].amplitude = std::sqrt(std::max(mode_weights[a], 1e-12));
  }
  GroundStateResult res;
  res.state = gaussian_state(specs);

  auto renormalize = [&](GpeState& st) {
    double nrm = 0.0;
    const double dx = problem_.grid.dx();
    for (int a = 0; a < K; ++a)
      for (const cdouble& z : st.psi[a]) nrm += std::norm(z) * dx;
    const double scale = std::sqrt(target_norm / nrm);
    for (auto& mode_psi : st.psi)
      for (cdouble& z : mode_psi) z *= scale;
  };
  renormalize(res.state);

  double e_prev = functional_energy(res.state);
  res.energy_history.push_back(e_prev);
  for (int it = 0; it < max_iter; ++it) {
    step_imaginary(res.state, dtau);
    renormalize(res.state);
    const double e = functional_energy(res.state);
    res.energy_history.push_back(e);
    ++res.iterations;
    const double rel = std::abs(e - e_prev) / std::max(std::abs(e), 1e-300);
    e_prev = e;
    if (rel < tol) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged) {
    std::string tail;
    const size_t n = res.energy_history.size();
    for (size_t i = n > 5 ? n - 5 : 0; i < n; ++i)
      tail += " " + std::to_string(res.energy_history[i]);
    throw numeric_error("ground_state: no convergence after " + std::to_string(res.iterations) +
                        " iterations; trailing energies:" + tail);
  }
  res.energy = e_prev;

  // mu = <psi|H[psi]|psi>/<psi|psi> with the full (not halved) contact term.
  const GpeState& st = res.state;
  const int N = problem_.grid.points;
  const double dx = problem_.grid.dx();
  double mu = 0.0;
  for (int a = 0; a < K; ++a) {
    std::vector<cdouble> psihat = st.psi[a];
    impl_->fft(psihat, true);
    for (int i = 0; i < N; ++i)
      mu += kinetic_energy_of_mode(problem_, a, problem_.grid.k(i)) * std::norm(psihat[i]) * dx / N;
  }
  const double mu_env = coupling_envelope_ ? coupling_envelope_(st.t) : 1.0;
  for (int ix = 0; ix < N; ++ix)
    for (int a = 0; a < K; ++a) {
      double diag = problem_.modes[a].e_offset;
      if (!problem_.modes[a].v_ext.empty()) diag += problem_.modes[a].v_ext[ix];
      mu += diag * std::norm(st.psi[a][ix]) * dx;
      for (int b = 0; b < K; ++b) {
        mu += (std::conj(st.psi[a][ix]) * (mu_env * problem_.coupling_at(a, b, ix)) *
               st.psi[b][ix]).real() * dx;
        for (int nu = 0; nu < K; ++nu)
          for (int mmu = 0; mmu < K; ++mmu)
            mu += (problem_.eta_at(a, nu, b, mmu) * std::conj(st.psi[a][ix]) *
                   std::conj(st.psi[nu][ix]) * st.psi[b][ix] * st.psi[mmu][ix])
                      .real() *
                  dx;
      }
    }
  res.chemical_potential = mu / target_norm;
  return res;
}

GpeState GpeSimulator::plane_wave_state(const std::vector<cdouble>& amplitudes, int k_index) const {
  const int K = problem_.n_modes();
  const int N = problem_.grid.points;
  if (static_cast<int>(amplitudes.size()) != K)
    throw std::invalid_argument("plane_wave_state: one amplitude per mode");
  GpeState st;
  st.psi.assign(K, std::vector<cdouble>(N));
  const double k = 2.0 * kPi * k_index / problem_.grid.length;
  for (int a = 0; a < K; ++a)
    for (int i = 0; i < N; ++i)
      st.psi[a][i] = amplitudes[a] * std::exp(cdouble(0.0, k * problem_.grid.x(i)));
  return st;
}

GpeState GpeSimulator::gaussian_state(const std::vector<GaussianSpec>& specs) const {
  const int K = problem_.n_modes();
  const int N = problem_.grid.points;
  if (static_cast<int>(specs.size()) != K)
    throw std::invalid_argument("gaussian_state: one spec per mode");
  GpeState st;
  st.psi.assign(K, std::vector<cdouble>(N));
  const double dx = problem_.grid.dx();
  for (int a = 0; a < K; ++a) {
    double nrm = 0.0;
    for (int i = 0; i < N; ++i) {
      const double x = problem_.grid.x(i) - specs[a].x0;
      const double env = std::exp(-x * x / (4.0 * specs[a].sigma * specs[a].sigma));
      st.psi[a][i] = env * std::exp(cdouble(0.0, specs[a].k * problem_.grid.x(i)));
      nrm += std::norm(st.psi[a][i]) * dx;
    }
    const double want = specs[a].amplitude * specs[a].amplitude;
    const double scale = nrm > 0.0 ? std::sqrt(want / nrm) : 0.0;
    for (int i = 0; i < N; ++i) st.psi[a][i] *= scale;
  }
  return st;
}

}  // namespace cobos
