#include "kostin/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kostin {

namespace {

double radicand(double c1, double tau) {
  double u = tau + c1 * c1 * c1 * c1;
  if (!(u > 0.0))
    throw std::domain_error("perturbation: tau + c1^4 must be positive");
  return u;
}

}  // namespace

ScaledWidthPoint rescale(const PhysicalParams& params, const WidthPoint& w) {
  params.validate();
  if (!(params.nu > 0.0))
    throw std::domain_error("rescale: friction-dominated scaling requires nu > 0");
  double len = std::sqrt(params.mass * params.nu / params.hbar);
  return {params.nu * w.t, len * w.a,
          std::sqrt(params.mass / (params.hbar * params.nu)) * w.adot};
}

WidthPoint unrescale(const PhysicalParams& params, const ScaledWidthPoint& s) {
  params.validate();
  if (!(params.nu > 0.0))
    throw std::domain_error("unrescale: friction-dominated scaling requires nu > 0");
  double len = std::sqrt(params.mass * params.nu / params.hbar);
  return {s.tau / params.nu, s.alpha / len,
          s.alpha_dot / std::sqrt(params.mass / (params.hbar * params.nu))};
}

double alpha0(double c1, double tau) { return std::pow(radicand(c1, tau), 0.25); }

double alpha0_dot(double c1, double tau) {
  return 0.25 * std::pow(radicand(c1, tau), -0.75);
}

double alpha0_ddot(double c1, double tau) {
  return -0.1875 * std::pow(radicand(c1, tau), -1.75);
}

double alpha1(double c1, double c2, double tau) {
  double u = radicand(c1, tau);
  return (c2 + 0.1875 * std::log(u)) * std::pow(u, -0.75);
}

double alpha1_dot(double c1, double c2, double tau) {
  double u = radicand(c1, tau);
  return (0.1875 - 0.75 * (c2 + 0.1875 * std::log(u))) * std::pow(u, -1.75);
}

double perturbative_width(const PerturbationConstants& consts, double tau) {
  return alpha0(consts.c1, tau) + alpha1(consts.c1, consts.c2, tau);
}

double perturbative_width_dot(const PerturbationConstants& consts, double tau) {
  return alpha0_dot(consts.c1, tau) + alpha1_dot(consts.c1, consts.c2, tau);
}

double constants_residual(double c1, double a0, double adot0) {
  double c3 = c1 * c1 * c1;
  double c4 = c3 * c1;
  double c7 = c4 * c3;
  return adot0 - (1.0 / c3 - 0.75 * a0 / c4 + 0.1875 / c7);
}

namespace {

double residual_derivative(double c1, double a0) {
  // d/dc1 of -(c^-3 - (3 a0/4) c^-4 + (3/16) c^-7)
  double c4 = c1 * c1 * c1 * c1;
  double c5 = c4 * c1;
  double c8 = c4 * c4;
  return 3.0 / c4 - 3.0 * a0 / c5 + 21.0 / (16.0 * c8);
}

double back_substitute_c2(double c1, double a0) {
  return a0 * c1 * c1 * c1 - c1 * c1 * c1 * c1 - 0.75 * std::log(c1);
}

}  // namespace

ConstantsSolution solve_constants(double a0, double adot0, const RootScan& scan) {
  if (!(a0 > 0.0)) throw std::invalid_argument("solve_constants: a0 must be positive");
  if (!(scan.c1_min > 0.0) || !(scan.c1_max > scan.c1_min) || scan.n_probes < 3)
    throw std::invalid_argument("solve_constants: malformed scan range");

  const std::size_t n = scan.n_probes;
  const double log_lo = std::log(scan.c1_min);
  const double log_hi = std::log(scan.c1_max);
  auto probe_at = [&](std::size_t i) {
    return std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                 static_cast<double>(n - 1));
  };

  ConstantsSolution out;
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = -rmin;
  double prev_c = probe_at(0);
  double prev_r = constants_residual(prev_c, a0, adot0);
  rmin = std::min(rmin, prev_r);
  rmax = std::max(rmax, prev_r);

  std::vector<double> roots;
  for (std::size_t i = 1; i < n; ++i) {
    double c = probe_at(i);
    double r = constants_residual(c, a0, adot0);
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    bool bracket = (prev_r == 0.0) || (prev_r < 0.0) != (r < 0.0);
    if (bracket) {
      // bisection to narrow the bracket, then Newton polish
      double lo = prev_c, hi = c, flo = prev_r;
      if (prev_r == 0.0) {
        roots.push_back(prev_c);
      } else {
        for (int it = 0; it < 80 && (hi - lo) > 1e-15 * hi; ++it) {
          double mid = 0.5 * (lo + hi);
          double fm = constants_residual(mid, a0, adot0);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        double root = 0.5 * (lo + hi);
        for (int it = 0; it < 50; ++it) {
          double f = constants_residual(root, a0, adot0);
          if (std::abs(f) <= 1e-12) break;
          double df = residual_derivative(root, a0);
          if (df == 0.0) break;
          double step = f / df;
          double next = root - step;
          if (!(next > 0.0) || !std::isfinite(next)) break;
          if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * root) {
            root = next;
            break;
          }
          root = next;
        }
        roots.push_back(root);
      }
      if (i == 1 || i == n - 1) out.boundary_warning = true;
    }
    prev_c = c;
    prev_r = r;
  }

  if (roots.empty())
    throw NoRootError(
        "solve_constants: no sign change of the residual in the scan range "
        "(residual extrema " +
            std::to_string(rmin) + " .. " + std::to_string(rmax) + ")",
        rmin, rmax);

  std::sort(roots.begin(), roots.end(), std::greater<>());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-12 * x; }),
              roots.end());
  int index = 1;
  for (double c1 : roots)
    out.roots.push_back({c1, back_substitute_c2(c1, a0), index++});
  return out;
}

}  // namespace kostin
