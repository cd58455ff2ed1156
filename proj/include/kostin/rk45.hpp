#ifndef KOSTIN_RK45_HPP
#define KOSTIN_RK45_HPP

// Embedded Dormand-Prince 5(4) integrator with fourth-order dense output.
// Classic coefficients; FSAL; PI-free standard step-size controller.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "kostin/core.hpp"

namespace kostin {

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double max_error_estimate = 0.0;  // largest accepted scaled error norm
};

struct Rk45Options {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 0.0;  // 0 = automatic
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
};

template <std::size_t N>
using StateVec = std::array<double, N>;

/// Dense-output interpolant for one accepted step [t0, t0 + h].
template <std::size_t N>
struct DenseSegment {
  double t0 = 0.0, h = 0.0;
  StateVec<N> r1{}, r2{}, r3{}, r4{}, r5{};

  StateVec<N> eval(double t) const {
    double s = (t - t0) / h;
    double s1 = 1.0 - s;
    StateVec<N> y;
    for (std::size_t i = 0; i < N; ++i)
      y[i] = r1[i] + s * (r2[i] + s1 * (r3[i] + s * (r4[i] + s1 * r5[i])));
    return y;
  }
};

namespace detail {

// Dormand-Prince tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;

}  // namespace detail

/// Integrate dy/dt = f(t, y) from t0 to t_end with adaptive step control.
///
/// `f(t, y, dydt)` fills the derivative.  After every accepted step
/// `on_accept(t_new, y_new, segment)` is invoked; it may throw to abort the
/// integration (the exception propagates).  Error control is per component:
/// |err_i| <= atol + rtol * max(|y_i|, |y_new_i|).
template <std::size_t N, class Rhs, class OnAccept>
StepStats rk45_integrate(Rhs&& f, double t0, StateVec<N> y, double t_end,
                         const Rk45Options& opt, OnAccept&& on_accept) {
  using namespace detail;
  StepStats stats;
  if (!(t_end > t0)) return stats;

  StateVec<N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  f(t0, y, k1);

  auto scaled_error = [&](const StateVec<N>& y0, const StateVec<N>& y1,
                          const StateVec<N>& err) {
    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double sc = opt.atol + opt.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      double q = err[i] / sc;
      sum += q * q;
    }
    return std::sqrt(sum / static_cast<double>(N));
  };

  // initial step: crude curvature probe, clipped to the interval
  double h = opt.h_init;
  if (h <= 0.0) {
    double ynorm = 0.0, fnorm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      ynorm = std::max(ynorm, std::abs(y[i]));
      fnorm = std::max(fnorm, std::abs(k1[i]));
    }
    h = (fnorm > 0.0) ? 0.01 * std::max(ynorm, opt.atol) / fnorm : 1e-6 * (t_end - t0);
    h = std::min({h, 1e-2 * (t_end - t0), opt.h_max});
    h = std::max(h, 1e4 * std::numeric_limits<double>::epsilon() * std::abs(t0 > 0 ? t0 : 1.0));
  }

  double t = t0;
  bool last_rejected = false;
  while (t < t_end) {
    if (stats.accepted + stats.rejected > opt.max_steps)
      throw StiffnessError("rk45: step budget exhausted");
    h = std::min({h, opt.h_max, t_end - t});
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0))
      throw StiffnessError("rk45: step size underflow at t = " + std::to_string(t));

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    f(t + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    f(t + h, ynew, k7);  // FSAL stage

    StateVec<N> errv;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      errv[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                     e6 * k6[i] + e7 * k7[i]);
      finite = finite && std::isfinite(ynew[i]) && std::isfinite(errv[i]);
    }
    double err = finite ? scaled_error(y, ynew, errv)
                        : std::numeric_limits<double>::infinity();

    if (err <= 1.0) {
      DenseSegment<N> seg;
      seg.t0 = t;
      seg.h = h;
      for (std::size_t i = 0; i < N; ++i) {
        double dy = ynew[i] - y[i];
        double bspl = h * k1[i] - dy;
        seg.r1[i] = y[i];
        seg.r2[i] = dy;
        seg.r3[i] = bspl;
        seg.r4[i] = dy - h * k7[i] - bspl;
        seg.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                         d6 * k6[i] + d7 * k7[i]);
      }
      t += h;
      y = ynew;
      k1 = k7;
      ++stats.accepted;
      stats.max_error_estimate = std::max(stats.max_error_estimate, err);
      on_accept(t, y, seg);

      double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
      fac = std::min(fac, last_rejected ? 1.0 : 5.0);
      fac = std::max(fac, 0.2);
      h *= fac;
      last_rejected = false;
    } else {
      ++stats.rejected;
      double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.5;
      h *= std::min(fac, 1.0);
      last_rejected = true;
    }
  }
  return stats;
}

}  // namespace kostin

#endif  // KOSTIN_RK45_HPP
