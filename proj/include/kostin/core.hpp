#ifndef KOSTIN_CORE_HPP
#define KOSTIN_CORE_HPP

// Shared domain types for the Kostin (Schrodinger-Langevin) simulation
// library: physical constants, Gaussian packet state, grid description and
// the external-potential abstraction with exact first and second spatial
// derivatives.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kostin {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base class for runtime failures of the numerical schemes.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Packet width fell below the 1/a^3 singularity floor.
class SingularityError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// Adaptive step size underflowed; the problem is too stiff or non-smooth.
class StiffnessError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// Spatial grid unsuitable for the requested state (too narrow or too coarse).
class GridError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// Adjacent-point phase jump of magnitude pi: the branch of arg(psi) is
/// ambiguous and the phase cannot be unwrapped.
class UnwrapError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// One-step norm drift exceeded the failure threshold.
class NormDriftError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// Probability density reached the grid boundary.
class PacketEscapedError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// Numeric phase-space quadrature failed its normalization check.
class QuadratureError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

/// Root scan found no sign change; carries the scanned residual extrema.
class NoRootError : public SimulationError {
 public:
  NoRootError(const std::string& what, double rmin, double rmax)
      : SimulationError(what), residual_min(rmin), residual_max(rmax) {}
  double residual_min;
  double residual_max;
};

/// Configuration parse/validation failure; `field` is the offending key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field_path, const std::string& what)
      : std::runtime_error(field_path + ": " + what),
        field(std::move(field_path)) {}
  std::string field;
};

// ---------------------------------------------------------------------------
// Parameters and states
// ---------------------------------------------------------------------------

/// The three dimensional constants entering every equation: hbar, the mass m
/// and the Ohmic damping rate nu.  nu = 0 is the conservative limit.
struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  double nu = 0.0;

  void validate() const;
};

/// Reduced Gaussian description of the wave packet at time t: center of mass
/// q, its velocity, width a and width velocity.
struct PacketState {
  double t = 0.0;
  double q = 0.0;
  double qdot = 0.0;
  double a = 1.0;
  double adot = 0.0;

  void validate() const;
};

/// Uniform spatial grid plus time-stepping parameters.
struct GridSpec {
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t n_points = 16;
  double dt = 1e-3;
  double t_end = 1.0;

  void validate() const;
  double dx() const { return (x_max - x_min) / static_cast<double>(n_points); }
};

// ---------------------------------------------------------------------------
// Time dependence
// ---------------------------------------------------------------------------

/// A scalar function of time: a constant, a closed-form callable, or a
/// tabulated curve with linear interpolation (clamped at the table ends).
class TimeFunction {
 public:
  TimeFunction(double constant);  // NOLINT: implicit by design
  explicit TimeFunction(std::function<double(double)> fn);
  static TimeFunction table(std::vector<double> times, std::vector<double> values);

  double operator()(double t) const;
  bool is_constant() const { return kind_ == Kind::constant; }

 private:
  enum class Kind { constant, callable, tabulated };
  TimeFunction() = default;
  Kind kind_ = Kind::constant;
  double const_value_ = 0.0;
  std::function<double(double)> fn_;
  std::vector<double> table_t_, table_v_;
};

// ---------------------------------------------------------------------------
// Potential
// ---------------------------------------------------------------------------

/// Value, slope and curvature of V at one point: (V, V', V'').
struct PotentialSample {
  double value = 0.0;
  double slope = 0.0;
  double curvature = 0.0;
};

/// External potential V(x,t) with exact spatial derivatives.
///
/// Built-in families: free particle, harmonic V = k(t) x^2 / 2, uniform
/// force V = -F(t) x, polynomial of degree <= 4, and a user callable that
/// supplies (V, V', V'') together.  User callables are probed against
/// centered finite differences at construction; inconsistent derivatives are
/// rejected.
class Potential {
 public:
  enum class Family { free, harmonic, uniform_force, polynomial, callable };

  using SpaceTimeFn = std::function<double(double x, double t)>;

  static Potential free_particle();
  static Potential harmonic(TimeFunction stiffness);  // stiffness k = m omega0^2
  static Potential uniform_force(TimeFunction force);
  static Potential polynomial(std::vector<double> coefficients);  // c0..c4
  static Potential callable(SpaceTimeFn v, SpaceTimeFn v1, SpaceTimeFn v2,
                            std::optional<std::pair<double, double>> domain = {});

  /// Evaluate (V, V', V'') at (x, t).  Throws std::domain_error outside a
  /// callable's stated domain.
  PotentialSample eval(double x, double t) const;

  Family family() const { return family_; }
  bool is_time_dependent() const { return time_dependent_; }

 private:
  Potential() = default;
  Family family_ = Family::free;
  bool time_dependent_ = false;
  TimeFunction coeff_{0.0};            // harmonic stiffness or uniform force
  std::vector<double> poly_;           // polynomial coefficients, low to high
  SpaceTimeFn v_, v1_, v2_;            // user callable
  std::optional<std::pair<double, double>> domain_;
};

}  // namespace kostin

#endif  // KOSTIN_CORE_HPP
