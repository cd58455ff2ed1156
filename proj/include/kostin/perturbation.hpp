#ifndef KOSTIN_PERTURBATION_HPP
#define KOSTIN_PERTURBATION_HPP

// Friction-dominated perturbation theory for the free-particle width.  In
// dimensionless variables (tau = nu t, alpha = sqrt(m nu / hbar) a) the width
// equation becomes eps add + ad = 1/(4 a^3); treating the acceleration as the
// perturbation gives, to first order,
//
//   alpha0 = (tau + c1^4)^{1/4}
//   alpha1 = (c2 + (3/16) ln(tau + c1^4)) / (tau + c1^4)^{3/4}
//
// with the constants (c1, c2) fixed by the initial conditions through a
// scalar root-finding problem that may admit several solutions.

#include <vector>

#include "kostin/core.hpp"

namespace kostin {

/// Integration constants of one perturbative branch.  branch_index is
/// 1-based, assigned in descending c1 order.
struct PerturbationConstants {
  double c1 = 1.0;
  double c2 = 0.0;
  int branch_index = 1;
};

/// Truncation order of the series (the expansion is carried to first order;
/// higher corrections are not implemented).
inline constexpr int kPerturbationOrder = 1;

/// The perturbative form targets the collision-dominated regime; trajectories
/// are flagged valid only for tau >= this threshold (early-time transients
/// may disagree).
inline constexpr double kPerturbationTauMin = 1.0;

struct WidthPoint {
  double t, a, adot;
};

struct ScaledWidthPoint {
  double tau, alpha, alpha_dot;
};

/// tau = nu t, alpha = sqrt(m nu / hbar) a, d alpha/d tau = sqrt(m/(hbar nu)) adot.
/// Throws std::domain_error for nu = 0.
ScaledWidthPoint rescale(const PhysicalParams& params, const WidthPoint& w);
WidthPoint unrescale(const PhysicalParams& params, const ScaledWidthPoint& s);

/// Zeroth order width and its first two tau derivatives.
double alpha0(double c1, double tau);
double alpha0_dot(double c1, double tau);
double alpha0_ddot(double c1, double tau);

/// First-order correction and its tau derivative.
double alpha1(double c1, double c2, double tau);
double alpha1_dot(double c1, double c2, double tau);

/// alpha0 + alpha1 and its tau derivative.
double perturbative_width(const PerturbationConstants& consts, double tau);
double perturbative_width_dot(const PerturbationConstants& consts, double tau);

/// Scalar residual whose positive roots determine c1:
/// R(c1) = adot0 - (1/c1^3 - 3 a0/(4 c1^4) + 3/(16 c1^7)).
double constants_residual(double c1, double a0, double adot0);

struct RootScan {
  double c1_min = 1e-3;
  double c1_max = 1e3;
  std::size_t n_probes = 2000;  // log-spaced
};

struct ConstantsSolution {
  std::vector<PerturbationConstants> roots;  // sorted descending by c1
  bool boundary_warning = false;  // a root sits in the first or last scan interval
};

/// Find all real roots c1 > 0 of the residual within the scan range by
/// sign-change bracketing, bisection and Newton polish, then back-substitute
/// c2 = a0 c1^3 - c1^4 - (3/4) ln c1.  Throws NoRootError (carrying the
/// scanned residual extrema) when no sign change is found.
ConstantsSolution solve_constants(double a0, double adot0, const RootScan& scan = {});

}  // namespace kostin

#endif  // KOSTIN_PERTURBATION_HPP
