#ifndef KOSTIN_WIGNER_HPP
#define KOSTIN_WIGNER_HPP

// Phase-space diagnostics: the numeric Wigner transform
//
//   f(x,p) = (1/2 pi hbar) Int dy Psi*(x + y/2) e^{i p y / hbar} Psi(x - y/2)
//
// evaluated on the grid by even/odd index pairing (y = 2 m dx lands psi on
// grid points, no interpolation), the closed Gaussian form, uncertainty
// products and the level-set ellipse area.

#include <span>
#include <vector>

#include "kostin/core.hpp"
#include "kostin/pde.hpp"

namespace kostin {

struct WignerGrid {
  std::vector<double> x_axis;
  std::vector<double> p_axis;
  std::vector<double> f;  // row-major, f[ix * p_axis.size() + ip]
  double t = 0.0;
  double max_imag_residue = 0.0;  // |Im| of the quadrature sum, ideally ~0

  double at(std::size_t ix, std::size_t ip) const { return f[ix * p_axis.size() + ip]; }
  /// sum f dx dp (trapezoid weights along a possibly non-uniform p axis).
  double total_mass() const;
};

/// Half of the conjugate spectral axis: n/2 momenta spaced 2 pi hbar/(n dx);
/// the y-quadrature step 2 dx makes the transform periodic in p with period
/// pi hbar / dx, so this axis covers exactly one period.
std::vector<double> default_momentum_axis(const PhysicalParams& params,
                                          const GridWavefunction& wf);

/// Discrete Wigner transform of a gridded state at the grid x points and the
/// given momenta.  Throws QuadratureError if the result's normalization is
/// outside 1 +- 1e-4.
WignerGrid wigner_numeric(const PhysicalParams& params, const GridWavefunction& wf,
                          std::span<const double> p_axis);

/// Closed Gaussian-packet Wigner function
///   f = (1/pi hbar) exp[-(x-q)^2/(2a^2) - (2a^2/hbar^2)(p - m qdot - (m adot/a)(x-q))^2],
/// positive everywhere.
double wigner_gaussian_analytic(const PhysicalParams& params, const PacketState& state,
                                double x, double p);

struct Uncertainty {
  double dx;       // = a
  double dp;       // = sqrt(m^2 adot^2 + hbar^2/(4a^2))
  double product;  // dx * dp >= hbar/2
};

Uncertainty uncertainties(const PhysicalParams& params, const PacketState& state);

/// Area enclosed by the level set f = level * f_max of the Gaussian Wigner
/// function, computed from its quadratic form; equals pi hbar ln(1/level)
/// independent of the state.
double ellipse_area(const PhysicalParams& params, const PacketState& state, double level);

}  // namespace kostin

#endif  // KOSTIN_WIGNER_HPP
