#include "kostin/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace kostin {

double WignerGrid::total_mass() const {
  if (x_axis.size() < 2 || p_axis.size() < 2) return 0.0;
  const double dx = x_axis[1] - x_axis[0];
  double sum = 0.0;
  for (std::size_t ix = 0; ix < x_axis.size(); ++ix) {
    for (std::size_t ip = 0; ip < p_axis.size(); ++ip) {
      double wp;
      if (ip == 0)
        wp = 0.5 * (p_axis[1] - p_axis[0]);
      else if (ip == p_axis.size() - 1)
        wp = 0.5 * (p_axis[ip] - p_axis[ip - 1]);
      else
        wp = 0.5 * (p_axis[ip + 1] - p_axis[ip - 1]);
      sum += at(ix, ip) * wp;
    }
  }
  return sum * dx;
}

std::vector<double> default_momentum_axis(const PhysicalParams& params,
                                          const GridWavefunction& wf) {
  const std::size_t n = wf.psi.size();
  const double dp = 2.0 * std::numbers::pi * params.hbar /
                    (wf.dx() * static_cast<double>(n));
  std::vector<double> p(n / 2);
  for (std::size_t j = 0; j < p.size(); ++j)
    p[j] = dp * (static_cast<double>(j) - static_cast<double>(n / 4));
  return p;
}

WignerGrid wigner_numeric(const PhysicalParams& params, const GridWavefunction& wf,
                          std::span<const double> p_axis) {
  params.validate();
  const std::size_t n = wf.psi.size();
  if (n < 4 || p_axis.size() < 2)
    throw std::invalid_argument("wigner_numeric: degenerate grid");
  if (!std::is_sorted(p_axis.begin(), p_axis.end()))
    throw std::invalid_argument("wigner_numeric: p_axis must be monotone increasing");

  const double dx = wf.dx();
  // y-quadrature: per output point the offsets y = 2m dx (whole-grid x) or
  // y = (2m+1) dx (half-grid x) land psi on grid points, step 2 dx each
  const double pref = 2.0 * dx / (2.0 * std::numbers::pi * params.hbar);

  // support where |psi| >= 1e-12 of the peak; the correlation product is
  // truncated outside
  double amax = 0.0;
  for (const auto& c : wf.psi) amax = std::max(amax, std::abs(c));
  std::size_t jlo = 0, jhi = n - 1;
  while (jlo < n && std::abs(wf.psi[jlo]) < 1e-12 * amax) ++jlo;
  while (jhi > jlo && std::abs(wf.psi[jhi]) < 1e-12 * amax) --jhi;

  // doubled output axis: whole and half grid points, spacing dx/2
  const std::size_t nx = 2 * n - 1;
  const std::size_t np = p_axis.size();
  WignerGrid out;
  out.t = wf.t;
  out.x_axis.resize(nx);
  for (std::size_t ix = 0; ix < nx; ++ix)
    out.x_axis[ix] = wf.grid.x_min + 0.5 * dx * static_cast<double>(ix);
  out.p_axis.assign(p_axis.begin(), p_axis.end());
  out.f.assign(nx * np, 0.0);

  std::vector<std::complex<double>> wstep(np), whalf(np);
  for (std::size_t ip = 0; ip < np; ++ip) {
    wstep[ip] = std::polar(1.0, p_axis[ip] * 2.0 * dx / params.hbar);
    whalf[ip] = std::polar(1.0, p_axis[ip] * dx / params.hbar);
  }

  std::vector<std::complex<double>> corr;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    if (ix % 2 == 0) {
      // x on the grid: y = 2m dx, corr[m] = psi*(i+m) psi(i-m)
      const std::size_t i = ix / 2;
      if (i < jlo || i > jhi) continue;
      const std::size_t mmax = std::min(jhi - i, i - jlo);
      corr.resize(mmax + 1);
      for (std::size_t m = 0; m <= mmax; ++m)
        corr[m] = std::conj(wf.psi[i + m]) * wf.psi[i - m];
      for (std::size_t ip = 0; ip < np; ++ip) {
        const std::complex<double> w = wstep[ip];
        std::complex<double> acc = corr[0];
        std::complex<double> wm = w;
        for (std::size_t m = 1; m <= mmax; ++m) {
          acc += 2.0 * (corr[m] * wm).real();
          wm *= w;
        }
        out.f[ix * np + ip] = pref * acc.real();
        out.max_imag_residue =
            std::max(out.max_imag_residue, pref * std::abs(acc.imag()));
      }
    } else {
      // x between grid points i and i+1: y = (2m+1) dx,
      // corr[m] = psi*(i+1+m) psi(i-m); no m = 0 diagonal term
      const std::size_t i = (ix - 1) / 2;
      if (i < jlo || i + 1 > jhi) continue;
      const std::size_t mmax_pos = jhi - (i + 1);
      const std::size_t mmax_neg = i - jlo;
      const std::size_t mmax = std::min(mmax_pos, mmax_neg);
      corr.resize(mmax + 1);
      for (std::size_t m = 0; m <= mmax; ++m)
        corr[m] = std::conj(wf.psi[i + 1 + m]) * wf.psi[i - m];
      for (std::size_t ip = 0; ip < np; ++ip) {
        const std::complex<double> w = wstep[ip];
        std::complex<double> acc = 0.0;
        std::complex<double> wm = whalf[ip];  // e^{i p (2m+1) dx / hbar}, m = 0
        for (std::size_t m = 0; m <= mmax; ++m) {
          acc += 2.0 * (corr[m] * wm).real();
          wm *= w;
        }
        out.f[ix * np + ip] = pref * acc.real();
      }
    }
  }

  const double mass_total = out.total_mass();
  if (std::abs(mass_total - 1.0) > 1e-4)
    throw QuadratureError("wigner_numeric: normalization " + std::to_string(mass_total) +
                          " outside 1 +- 1e-4 (momentum axis too narrow?)");
  return out;
}

double wigner_gaussian_analytic(const PhysicalParams& params, const PacketState& state,
                                double x, double p) {
  params.validate();
  if (!(state.a > 0.0))
    throw std::invalid_argument("wigner_gaussian_analytic: width must be positive");
  const double u = x - state.q;
  const double a2 = state.a * state.a;
  const double pc = p - params.mass * state.qdot -
                    (params.mass * state.adot / state.a) * u;
  const double expo = -u * u / (2.0 * a2) -
                      (2.0 * a2 / (params.hbar * params.hbar)) * pc * pc;
  return std::exp(expo) / (std::numbers::pi * params.hbar);
}

Uncertainty uncertainties(const PhysicalParams& params, const PacketState& state) {
  params.validate();
  if (!(state.a > 0.0))
    throw std::invalid_argument("uncertainties: width must be positive");
  const double dp = std::hypot(params.mass * state.adot,
                               0.5 * params.hbar / state.a);
  return {state.a, dp, state.a * dp};
}

double ellipse_area(const PhysicalParams& params, const PacketState& state, double level) {
  params.validate();
  if (!(level > 0.0) || !(level < 1.0))
    throw std::invalid_argument("ellipse_area: level must lie in (0, 1)");
  if (!(state.a > 0.0))
    throw std::invalid_argument("ellipse_area: width must be positive");
  // quadratic form A u^2 + 2 B u w + C w^2 of the exponent, u = x - q,
  // w = p - m qdot
  const double a2 = state.a * state.a;
  const double h2 = params.hbar * params.hbar;
  const double shear = params.mass * state.adot / state.a;
  const double A = 1.0 / (2.0 * a2) + (2.0 * a2 / h2) * shear * shear;
  const double B = -(2.0 * a2 / h2) * shear;
  const double C = 2.0 * a2 / h2;
  const double det = A * C - B * B;  // = 1/hbar^2 for every packet state
  return std::numbers::pi * std::log(1.0 / level) / std::sqrt(det);
}

}  // namespace kostin
