#ifndef KOSTIN_MOMENTS_HPP
#define KOSTIN_MOMENTS_HPP

// Reduced Gaussian dynamics of the Kostin equation: the packet center obeys
// damped Newton dynamics in the expanded potential and the width obeys the
// damped Pinney equation
//
//   qdd + nu qd = -V'(q,t)/m
//   add + nu ad + (V''(q,t)/m) a = hbar^2 / (4 m^2 a^3)
//
// together with the free-particle closed forms used for cross-validation.

#include <span>
#include <vector>

#include "kostin/core.hpp"
#include "kostin/rk45.hpp"

namespace kostin {

/// Width below which the 1/a^3 term is treated as a singularity.
inline constexpr double kWidthFloor = 1e-12;

struct MomentTrajectory {
  PhysicalParams params;
  std::vector<PacketState> samples;  // dense output at the requested times
  std::vector<PacketState> steps;    // every accepted integrator step, t0 included
  StepStats stats;
};

/// Integrate the coupled (q, qdot, a, adot) system from init.t to grid.t_end,
/// sampling every grid.dt.  Throws SingularityError if a falls below
/// kWidthFloor and StiffnessError on step-size underflow.
MomentTrajectory integrate_moments(const PhysicalParams& params, const Potential& pot,
                                   const PacketState& init, const GridSpec& grid,
                                   double rtol = 1e-10, double atol = 1e-12);

/// Same, with explicit sample times (strictly increasing, first >= init.t).
MomentTrajectory integrate_moments(const PhysicalParams& params, const Potential& pot,
                                   const PacketState& init,
                                   std::span<const double> sample_times,
                                   const Rk45Options& opt);

struct CenterState {
  double q;
  double qdot;
};

/// Closed-form damped free-particle center: q = q0 + (qd0/nu)(1 - e^{-nu t}),
/// qdot = qd0 e^{-nu t}.  Switches to a series for nu*t < 1e-8 (covers nu = 0).
CenterState free_particle_center(const PhysicalParams& params, double q0,
                                 double qdot0, double t);

/// Exact conservative free-particle width:
/// a^2 = (a0 + ad0 t)^2 + hbar^2 t^2 / (4 m^2 a0^2).
double conservative_width_exact(const PhysicalParams& params, double a0,
                                double adot0, double t);

/// Damping-dominated asymptote a ~ (hbar^2 t / (m^2 nu))^{1/4}, valid for
/// nu*t >> 1.  Throws std::domain_error for nu = 0 or t <= 0.
double asymptotic_width(const PhysicalParams& params, double t);

/// Width Lyapunov functional E_w = adot^2/2 + hbar^2/(8 m^2 a^2);
/// non-increasing along damped free trajectories.
double lyapunov_energy(const PhysicalParams& params, const PacketState& state);

}  // namespace kostin

#endif  // KOSTIN_MOMENTS_HPP
