#include "kostin/core.hpp"

#include <algorithm>
#include <cmath>

namespace kostin {

void PhysicalParams::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw std::invalid_argument("PhysicalParams: hbar must be positive");
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("PhysicalParams: mass must be positive");
  if (!(nu >= 0.0) || !std::isfinite(nu))
    throw std::invalid_argument("PhysicalParams: nu must be non-negative");
}

void PacketState::validate() const {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("PacketState: width a must be positive");
  for (double v : {t, q, qdot, adot})
    if (!std::isfinite(v))
      throw std::invalid_argument("PacketState: non-finite field");
}

void GridSpec::validate() const {
  if (!(x_min < x_max))
    throw std::invalid_argument("GridSpec: x_min must be below x_max");
  if (n_points < 16)
    throw std::invalid_argument("GridSpec: n_points must be at least 16");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("GridSpec: dt must be positive");
  if (!std::isfinite(t_end))
    throw std::invalid_argument("GridSpec: t_end must be finite");
}

// ---------------------------------------------------------------------------
// TimeFunction
// ---------------------------------------------------------------------------

TimeFunction::TimeFunction(double constant) : kind_(Kind::constant), const_value_(constant) {}

TimeFunction::TimeFunction(std::function<double(double)> fn)
    : kind_(Kind::callable), fn_(std::move(fn)) {
  if (!fn_) throw std::invalid_argument("TimeFunction: empty callable");
}

TimeFunction TimeFunction::table(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2)
    throw std::invalid_argument("TimeFunction::table: need two or more (t, v) pairs");
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("TimeFunction::table: times must be sorted");
  TimeFunction f;
  f.kind_ = Kind::tabulated;
  f.table_t_ = std::move(times);
  f.table_v_ = std::move(values);
  return f;
}

double TimeFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::constant:
      return const_value_;
    case Kind::callable:
      return fn_(t);
    case Kind::tabulated: {
      if (t <= table_t_.front()) return table_v_.front();
      if (t >= table_t_.back()) return table_v_.back();
      auto it = std::upper_bound(table_t_.begin(), table_t_.end(), t);
      std::size_t i = static_cast<std::size_t>(it - table_t_.begin());
      double w = (t - table_t_[i - 1]) / (table_t_[i] - table_t_[i - 1]);
      return table_v_[i - 1] + w * (table_v_[i] - table_v_[i - 1]);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Potential
// ---------------------------------------------------------------------------

Potential Potential::free_particle() {
  Potential p;
  p.family_ = Family::free;
  return p;
}

Potential Potential::harmonic(TimeFunction stiffness) {
  Potential p;
  p.family_ = Family::harmonic;
  p.time_dependent_ = !stiffness.is_constant();
  p.coeff_ = std::move(stiffness);
  return p;
}

Potential Potential::uniform_force(TimeFunction force) {
  Potential p;
  p.family_ = Family::uniform_force;
  p.time_dependent_ = !force.is_constant();
  p.coeff_ = std::move(force);
  return p;
}

Potential Potential::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty() || coefficients.size() > 5)
    throw std::invalid_argument("Potential::polynomial: degree must be <= 4");
  for (double c : coefficients)
    if (!std::isfinite(c))
      throw std::invalid_argument("Potential::polynomial: non-finite coefficient");
  Potential p;
  p.family_ = Family::polynomial;
  p.poly_ = std::move(coefficients);
  return p;
}

Potential Potential::callable(SpaceTimeFn v, SpaceTimeFn v1, SpaceTimeFn v2,
                              std::optional<std::pair<double, double>> domain) {
  if (!v || !v1 || !v2)
    throw std::invalid_argument("Potential::callable: all of V, V', V'' required");
  Potential p;
  p.family_ = Family::callable;
  p.time_dependent_ = true;  // unknown, assume the general case
  p.v_ = std::move(v);
  p.v1_ = std::move(v1);
  p.v2_ = std::move(v2);
  p.domain_ = domain;

  // Probe the supplied derivatives against centered differences of V.  A
  // callable whose V' or V'' disagrees with V is rejected here rather than
  // poisoning an integration later.
  double lo = domain ? domain->first : -2.0;
  double hi = domain ? domain->second : 2.0;
  const double probes[] = {lo + 0.17 * (hi - lo), lo + 0.5 * (hi - lo),
                           lo + 0.83 * (hi - lo)};
  for (double x : probes) {
    double h = std::max(std::abs(x), 1.0) * 1e-5;
    if (x - h < lo || x + h > hi) continue;
    PotentialSample s{p.v_(x, 0.0), p.v1_(x, 0.0), p.v2_(x, 0.0)};
    double fd1 = (p.v_(x + h, 0.0) - p.v_(x - h, 0.0)) / (2.0 * h);
    double fd2 = (p.v_(x + h, 0.0) - 2.0 * s.value + p.v_(x - h, 0.0)) / (h * h);
    double scale1 = std::max({std::abs(s.slope), std::abs(fd1), 1e-8});
    double scale2 = std::max({std::abs(s.curvature), std::abs(fd2), 1e-8});
    if (std::abs(fd1 - s.slope) > 1e-5 * scale1 ||
        std::abs(fd2 - s.curvature) > 1e-4 * scale2)
      throw std::invalid_argument(
          "Potential::callable: supplied derivatives disagree with finite "
          "differences of V");
  }
  return p;
}

PotentialSample Potential::eval(double x, double t) const {
  switch (family_) {
    case Family::free:
      return {0.0, 0.0, 0.0};
    case Family::harmonic: {
      double k = coeff_(t);
      return {0.5 * k * x * x, k * x, k};
    }
    case Family::uniform_force: {
      double f = coeff_(t);
      return {-f * x, -f, 0.0};
    }
    case Family::polynomial: {
      // Horner for V and both derivatives.
      double v = 0.0, v1 = 0.0, v2 = 0.0;
      for (std::size_t i = poly_.size(); i-- > 0;) {
        v2 = v2 * x + 2.0 * v1;
        v1 = v1 * x + v;
        v = v * x + poly_[i];
      }
      return {v, v1, v2};
    }
    case Family::callable: {
      if (domain_ && (x < domain_->first || x > domain_->second))
        throw std::domain_error("Potential: x outside the callable's domain");
      return {v_(x, t), v1_(x, t), v2_(x, t)};
    }
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace kostin
