#include "kostin/moments.hpp"

#include <algorithm>
#include <cmath>

namespace kostin {

namespace {

// y = (q, qdot, a, adot)
PacketState to_state(double t, const StateVec<4>& y) {
  return PacketState{t, y[0], y[1], y[2], y[3]};
}

}  // namespace

MomentTrajectory integrate_moments(const PhysicalParams& params, const Potential& pot,
                                   const PacketState& init, const GridSpec& grid,
                                   double rtol, double atol) {
  grid.validate();
  if (!(grid.t_end > init.t))
    throw std::invalid_argument("integrate_moments: t_end must exceed the initial time");
  std::vector<double> times;
  double t = init.t;
  // sample every grid.dt plus the exact endpoint
  while (t < grid.t_end - 0.5 * grid.dt) {
    times.push_back(t);
    t += grid.dt;
  }
  times.push_back(grid.t_end);
  Rk45Options opt;
  opt.rtol = rtol;
  opt.atol = atol;
  return integrate_moments(params, pot, init, times, opt);
}

MomentTrajectory integrate_moments(const PhysicalParams& params, const Potential& pot,
                                   const PacketState& init,
                                   std::span<const double> sample_times,
                                   const Rk45Options& opt) {
  params.validate();
  init.validate();
  if (!(opt.rtol > 0.0) || !(opt.atol > 0.0))
    throw std::invalid_argument("integrate_moments: rtol and atol must be positive");
  if (init.a < kWidthFloor)
    throw SingularityError("integrate_moments: initial width below the singularity floor");

  const double hbar2_4m2 = params.hbar * params.hbar / (4.0 * params.mass * params.mass);
  const double inv_m = 1.0 / params.mass;
  const double nu = params.nu;

  auto rhs = [&](double t, const StateVec<4>& y, StateVec<4>& dy) {
    PotentialSample s = pot.eval(y[0], t);
    double a = y[2];
    double a3 = a * a * a;
    dy[0] = y[1];
    dy[1] = -nu * y[1] - inv_m * s.slope;
    dy[2] = y[3];
    dy[3] = -nu * y[3] - (s.curvature * inv_m) * y[2] + hbar2_4m2 / a3;
  };

  MomentTrajectory traj;
  traj.params = params;
  traj.steps.push_back(init);

  StateVec<4> y0{init.q, init.qdot, init.a, init.adot};
  double t_end = sample_times.empty() ? init.t : sample_times.back();
  std::size_t next_sample = 0;
  // emit samples at or before init.t immediately
  while (next_sample < sample_times.size() && sample_times[next_sample] <= init.t) {
    traj.samples.push_back(init);
    traj.samples.back().t = sample_times[next_sample];
    ++next_sample;
  }

  auto on_accept = [&](double t, const StateVec<4>& y, const DenseSegment<4>& seg) {
    if (!(y[2] > kWidthFloor))
      throw SingularityError("integrate_moments: width hit the singularity floor at t = " +
                             std::to_string(t));
    traj.steps.push_back(to_state(t, y));
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t) {
      StateVec<4> ys = seg.eval(sample_times[next_sample]);
      PacketState st = to_state(sample_times[next_sample], ys);
      if (!(st.a > kWidthFloor))
        throw SingularityError("integrate_moments: sampled width below the floor");
      traj.samples.push_back(st);
      ++next_sample;
    }
  };

  traj.stats = rk45_integrate<4>(rhs, init.t, y0, t_end, opt, on_accept);
  return traj;
}

CenterState free_particle_center(const PhysicalParams& params, double q0,
                                 double qdot0, double t) {
  params.validate();
  const double nu = params.nu;
  double x = nu * t;
  if (x < 1e-8) {
    // series of (1 - e^{-nu t})/nu, safe down to nu = 0
    double growth = t * (1.0 - 0.5 * x + x * x / 6.0);
    return {q0 + qdot0 * growth, qdot0 * std::exp(-x)};
  }
  return {q0 - qdot0 * std::expm1(-x) / nu, qdot0 * std::exp(-x)};
}

double conservative_width_exact(const PhysicalParams& params, double a0,
                                double adot0, double t) {
  params.validate();
  if (!(a0 > 0.0)) throw std::invalid_argument("conservative_width_exact: a0 must be positive");
  double drift = a0 + adot0 * t;
  double spread = params.hbar * t / (2.0 * params.mass * a0);
  return std::hypot(drift, spread);
}

double asymptotic_width(const PhysicalParams& params, double t) {
  params.validate();
  if (!(params.nu > 0.0))
    throw std::domain_error("asymptotic_width: requires nu > 0");
  if (!(t > 0.0)) throw std::domain_error("asymptotic_width: requires t > 0");
  double val = params.hbar * params.hbar * t / (params.mass * params.mass * params.nu);
  return std::pow(val, 0.25);
}

double lyapunov_energy(const PhysicalParams& params, const PacketState& state) {
  params.validate();
  if (!(state.a > 0.0)) throw std::invalid_argument("lyapunov_energy: a must be positive");
  double h_over_ma = params.hbar / (params.mass * state.a);
  return 0.5 * state.adot * state.adot + 0.125 * h_over_ma * h_over_ma;
}

}  // namespace kostin
