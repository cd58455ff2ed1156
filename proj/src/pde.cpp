#include "kostin/pde.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace kostin {

namespace {

constexpr double kBoundaryDensityLimit = 1e-10;
constexpr double kStepNormDriftLimit = 1e-9;
// Relative density cut for the solver-internal phase reconstruction: points
// with amplitude below 1e-12 of the peak carry no dynamical weight.
constexpr double kInternalRhoCutRel = 1e-24;

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double GridWavefunction::norm() const {
  double sum = 0.0;
  for (const auto& c : psi) sum += std::norm(c);
  return sum * dx();
}

double GridWavefunction::boundary_density() const {
  if (psi.empty()) return 0.0;
  return std::max(std::norm(psi.front()), std::norm(psi.back())) * dx();
}

GridWavefunction gaussian_wavefunction(const PhysicalParams& params,
                                       const PacketState& state, const GridSpec& grid) {
  params.validate();
  state.validate();
  grid.validate();
  if (state.q - grid.x_min < 8.0 * state.a || grid.x_max - state.q < 8.0 * state.a)
    throw GridError("gaussian_wavefunction: grid must extend at least 8a beyond q");

  GridWavefunction wf;
  wf.grid = grid;
  wf.t = state.t;
  wf.psi.resize(grid.n_points);
  const double amp = std::pow(2.0 * std::numbers::pi * state.a * state.a, -0.25);
  const double m_over_h = params.mass / params.hbar;
  const double chirp = 0.5 * state.adot / state.a;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    double u = wf.x(i) - state.q;
    double envelope = amp * std::exp(-u * u / (4.0 * state.a * state.a));
    double phase = m_over_h * (chirp * u * u + state.qdot * u);
    wf.psi[i] = std::polar(envelope, phase);
  }

  double n0 = wf.norm();
  double factor = 1.0 / std::sqrt(n0);
  if (std::abs(factor - 1.0) > 1e-9)
    throw GridError("gaussian_wavefunction: normalization correction " +
                    std::to_string(factor - 1.0) + " exceeds 1e-9; grid too narrow or coarse");
  for (auto& c : wf.psi) c *= factor;

  if (wf.boundary_density() >= kBoundaryDensityLimit)
    throw GridError("gaussian_wavefunction: packet touches the grid boundary");
  return wf;
}

HydroFields madelung_decompose(const PhysicalParams& params, const GridWavefunction& wf,
                               double rho_cut) {
  params.validate();
  const std::size_t n = wf.psi.size();
  if (n < 2) throw std::invalid_argument("madelung_decompose: empty wavefunction");
  if (std::abs(wf.norm() - 1.0) > 1e-4)
    throw std::invalid_argument("madelung_decompose: wavefunction is not normalized");

  HydroFields f;
  f.rho.resize(n);
  f.S.resize(n);
  f.v.assign(n, 0.0);
  f.valid.assign(n, 0);

  std::size_t imax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    f.rho[i] = std::norm(wf.psi[i]);
    if (f.rho[i] > f.rho[imax]) imax = i;
  }

  // connected unmasked region around the density maximum
  std::size_t lo = imax, hi = imax;
  while (lo > 0 && f.rho[lo - 1] > rho_cut) --lo;
  while (hi + 1 < n && f.rho[hi + 1] > rho_cut) ++hi;
  f.first_valid = lo;
  f.last_valid = hi;
  for (std::size_t i = lo; i <= hi; ++i) f.valid[i] = 1;

  // unwrap arg(psi) from the maximum outward
  constexpr double pi = std::numbers::pi;
  const double two_pi = 2.0 * pi;
  auto wrapped_jump = [&](double next, double prev) {
    double d = next - prev;
    d -= two_pi * std::round(d / two_pi);
    if (std::abs(std::abs(d) - pi) < 1e-12)
      throw UnwrapError("madelung_decompose: adjacent phase jump of magnitude pi; "
                        "the grid is too coarse for this state");
    return d;
  };
  std::vector<double> theta(n, 0.0);
  theta[imax] = std::arg(wf.psi[imax]);
  double prev = theta[imax];
  for (std::size_t i = imax + 1; i <= hi; ++i) {
    prev += wrapped_jump(std::arg(wf.psi[i]), std::arg(wf.psi[i - 1]));
    theta[i] = prev;
  }
  prev = theta[imax];
  for (std::size_t i = imax; i-- > lo;) {
    prev += wrapped_jump(std::arg(wf.psi[i]), std::arg(wf.psi[i + 1]));
    theta[i] = prev;
  }
  // constant continuation outside the unmasked region
  for (std::size_t i = 0; i < lo; ++i) theta[i] = theta[lo];
  for (std::size_t i = hi + 1; i < n; ++i) theta[i] = theta[hi];

  for (std::size_t i = 0; i < n; ++i) f.S[i] = params.hbar * theta[i];

  // v = S'/m by central differences on the unmasked region
  const double dx = wf.dx();
  for (std::size_t i = lo; i <= hi; ++i) {
    double ds;
    if (i == 0)
      ds = (f.S[1] - f.S[0]) / dx;
    else if (i == n - 1)
      ds = (f.S[n - 1] - f.S[n - 2]) / dx;
    else
      ds = (f.S[i + 1] - f.S[i - 1]) / (2.0 * dx);
    f.v[i] = ds / params.mass;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Evolver
// ---------------------------------------------------------------------------

struct KostinEvolver::Impl {
  PhysicalParams params;
  Potential pot;
  GridSpec grid;
  std::size_t n = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<double> k2;  // spectral k_j^2 in FFT bin order
  mutable std::vector<double> scratch_V;
  mutable std::vector<double> scratch_dS;

  Impl(const PhysicalParams& p, Potential po, const GridSpec& g)
      : params(p), pot(std::move(po)), grid(g), n(g.n_points) {
    params.validate();
    grid.validate();
    {
      std::lock_guard<std::mutex> lock(fftw_mutex());
      buf = fftw_alloc_complex(n);
      fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!fwd || !bwd) throw SimulationError("KostinEvolver: FFT plan creation failed");
    k2.resize(n);
    const double dk = 2.0 * std::numbers::pi / (grid.dx() * static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      double k = dk * (j <= n / 2 ? static_cast<double>(j)
                                  : static_cast<double>(j) - static_cast<double>(n));
      k2[j] = k * k;
    }
    scratch_V.resize(n);
    scratch_dS.resize(n);
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }

  // Exact flow of i hbar psi_t = (V + nu S - nu <S>) psi over h: the
  // amplitude is frozen and S obeys a linear ODE, so the substep is a pure
  // phase multiplication.
  void phase_half_step(GridWavefunction& wf, double h, double t_eval,
                       bool include_mean) const {
    const double dx = wf.dx();
    HydroFields fields;
    double s_mean = 0.0, v_mean = 0.0, norm = 0.0;
    double rho_max = 0.0;
    for (const auto& c : wf.psi) rho_max = std::max(rho_max, std::norm(c));
    fields = madelung_decompose(params, wf, kInternalRhoCutRel * rho_max);
    for (std::size_t i = 0; i < n; ++i) {
      scratch_V[i] = pot.eval(wf.x(i), t_eval).value;
      norm += fields.rho[i];
      s_mean += fields.rho[i] * fields.S[i];
      v_mean += fields.rho[i] * scratch_V[i];
    }
    norm *= dx;
    s_mean *= dx / norm;
    v_mean *= dx / norm;

    const double nu = params.nu;
    if (nu > 0.0) {
      const double em1 = std::expm1(-nu * h);   // e^{-nu h} - 1
      const double growth = -em1 / nu;          // (1 - e^{-nu h})/nu
      if (include_mean) {
        for (std::size_t i = 0; i < n; ++i)
          scratch_dS[i] = em1 * (fields.S[i] - s_mean) - v_mean * h -
                          (scratch_V[i] - v_mean) * growth;
      } else {
        for (std::size_t i = 0; i < n; ++i)
          scratch_dS[i] = em1 * fields.S[i] - scratch_V[i] * growth;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) scratch_dS[i] = -scratch_V[i] * h;
    }
    const double inv_h = 1.0 / params.hbar;
    for (std::size_t i = 0; i < n; ++i)
      wf.psi[i] *= std::polar(1.0, scratch_dS[i] * inv_h);
  }

  void kinetic_step(GridWavefunction& wf, double dt) const {
    const double coef = -params.hbar * dt / (2.0 * params.mass);
    auto* b = reinterpret_cast<std::complex<double>*>(buf);
    std::copy(wf.psi.begin(), wf.psi.end(), b);
    fftw_execute(fwd);
    for (std::size_t j = 0; j < n; ++j) b[j] *= std::polar(1.0, coef * k2[j]);
    fftw_execute(bwd);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) wf.psi[i] = b[i] * scale;
  }

  void step(GridWavefunction& wf, double dt, bool include_mean) const {
    if (!(dt > 0.0)) throw std::invalid_argument("KostinEvolver::step: dt must be positive");
    if (wf.psi.size() != n)
      throw std::invalid_argument("KostinEvolver::step: grid size mismatch");
    const double norm0 = wf.norm();
    phase_half_step(wf, 0.5 * dt, wf.t + 0.25 * dt, include_mean);
    kinetic_step(wf, dt);
    phase_half_step(wf, 0.5 * dt, wf.t + 0.75 * dt, include_mean);
    wf.t += dt;
    const double drift = std::abs(wf.norm() - norm0);
    if (drift > kStepNormDriftLimit)
      throw NormDriftError("KostinEvolver::step: one-step norm drift " +
                           std::to_string(drift));
  }

  Observables measure(const GridWavefunction& wf) const {
    Observables o;
    o.t = wf.t;
    const double dx = wf.dx();
    double norm = 0.0, mx = 0.0;
    double rho_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r = std::norm(wf.psi[i]);
      norm += r;
      mx += r * wf.x(i);
      rho_max = std::max(rho_max, r);
    }
    norm *= dx;
    mx *= dx / norm;
    double vx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double u = wf.x(i) - mx;
      vx += std::norm(wf.psi[i]) * u * u;
    }
    vx *= dx / norm;
    o.norm = norm;
    o.mean_x = mx;
    o.delta_x = std::sqrt(std::max(vx, 0.0));

    HydroFields fields = madelung_decompose(params, wf, kInternalRhoCutRel * rho_max);
    double s_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) s_mean += fields.rho[i] * fields.S[i];
    o.mean_S = s_mean * dx / norm;

    // momentum moments in the spectral domain
    auto* b = reinterpret_cast<std::complex<double>*>(buf);
    std::copy(wf.psi.begin(), wf.psi.end(), b);
    fftw_execute(fwd);
    const double dk = 2.0 * std::numbers::pi / (dx * static_cast<double>(n));
    double wsum = 0.0, mp = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double k = dk * (j <= n / 2 ? static_cast<double>(j)
                                  : static_cast<double>(j) - static_cast<double>(n));
      double w = std::norm(b[j]);
      wsum += w;
      mp += w * params.hbar * k;
    }
    mp /= wsum;
    double vp = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double k = dk * (j <= n / 2 ? static_cast<double>(j)
                                  : static_cast<double>(j) - static_cast<double>(n));
      double u = params.hbar * k - mp;
      vp += std::norm(b[j]) * u * u;
    }
    vp /= wsum;
    o.mean_p = mp;
    o.delta_p = std::sqrt(std::max(vp, 0.0));
    return o;
  }
};

KostinEvolver::KostinEvolver(const PhysicalParams& params, Potential pot,
                             const GridSpec& grid)
    : impl_(std::make_unique<Impl>(params, std::move(pot), grid)) {}

KostinEvolver::~KostinEvolver() = default;

void KostinEvolver::step(GridWavefunction& wf, double dt, bool include_mean_phase_term) const {
  impl_->step(wf, dt, include_mean_phase_term);
}

Observables KostinEvolver::measure(const GridWavefunction& wf) const {
  return impl_->measure(wf);
}

ObservableSeries KostinEvolver::evolve(GridWavefunction& wf, const EvolveOptions& opts) const {
  const GridSpec& grid = impl_->grid;
  const double dt = grid.dt;
  const double span = grid.t_end - wf.t;
  if (!(span > 0.0))
    throw std::invalid_argument("KostinEvolver::evolve: t_end must exceed the current time");
  const auto n_steps = static_cast<std::size_t>(std::llround(span / dt));
  if (n_steps == 0 || std::abs(static_cast<double>(n_steps) * dt - span) >
                          1e-6 * std::max(1.0, std::abs(span)))
    throw std::invalid_argument("KostinEvolver::evolve: t_end - t must be a multiple of dt");
  std::size_t stride = 1;
  if (opts.sample_interval > 0.0)
    stride = std::max<std::size_t>(1, static_cast<std::size_t>(
                                          std::llround(opts.sample_interval / dt)));

  ObservableSeries series;
  auto sample = [&]() {
    if (wf.boundary_density() >= kBoundaryDensityLimit)
      throw PacketEscapedError("evolve: probability density reached the grid boundary");
    series.rows.push_back(impl_->measure(wf));
    if (opts.on_sample) opts.on_sample(wf);
  };

  try {
    sample();
    for (std::size_t s = 1; s <= n_steps; ++s) {
      impl_->step(wf, dt, opts.include_mean_phase_term);
      if (s % stride == 0 || s == n_steps) sample();
    }
  } catch (const SimulationError& e) {
    series.truncated = true;
    series.error = e.what();
  } catch (const std::domain_error& e) {
    series.truncated = true;
    series.error = e.what();
  }
  return series;
}

Observables measure(const PhysicalParams& params, const GridWavefunction& wf) {
  KostinEvolver ev(params, Potential::free_particle(), wf.grid);
  return ev.measure(wf);
}

double density_excess_kurtosis(const GridWavefunction& wf) {
  const double dx = wf.dx();
  double norm = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < wf.psi.size(); ++i) {
    double r = std::norm(wf.psi[i]);
    norm += r;
    mx += r * wf.x(i);
  }
  mx /= norm;
  double m2 = 0.0, m4 = 0.0;
  for (std::size_t i = 0; i < wf.psi.size(); ++i) {
    double r = std::norm(wf.psi[i]);
    double u = wf.x(i) - mx;
    m2 += r * u * u;
    m4 += r * u * u * u * u;
  }
  m2 /= norm;
  m4 /= norm;
  return m4 / (m2 * m2) - 3.0;
}

GridWavefunction kostin_step(const PhysicalParams& params, const Potential& pot,
                             const GridWavefunction& wf, double dt) {
  KostinEvolver ev(params, pot, wf.grid);
  GridWavefunction out = wf;
  ev.step(out, dt);
  return out;
}

ObservableSeries evolve(const PhysicalParams& params, const Potential& pot,
                        const GridWavefunction& wf0, const GridSpec& grid,
                        const EvolveOptions& opts) {
  if (wf0.grid.n_points != grid.n_points || wf0.grid.x_min != grid.x_min ||
      wf0.grid.x_max != grid.x_max)
    throw std::invalid_argument("evolve: wavefunction grid does not match the requested grid");
  KostinEvolver ev(params, pot, grid);
  GridWavefunction wf = wf0;
  wf.grid = grid;
  return ev.evolve(wf, opts);
}

}  // namespace kostin
