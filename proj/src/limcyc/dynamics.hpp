#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "limcyc/geometry.hpp"
#include "limcyc/numeric.hpp"
#include "limcyc/ode.hpp"
#include "limcyc/poly.hpp"

namespace limcyc {

/// Planar polynomial vector field (p, q).
struct VectorField {
  Poly p;
  Poly q;

  /// max(deg p, deg q); -1 only for the (invalid) zero field.
  int degree() const { return std::max(p.degree(), q.degree()); }
  /// Throws InvalidArgument for the zero field.
  void validate() const;
  /// The time-reversed field (-p, -q).
  VectorField reversed() const { return {-p, -q}; }

  bool operator==(const VectorField&) const = default;
};

/// Field and Jacobian entries compiled for double evaluation.
struct CompiledField {
  CompiledPoly p, q, px, py, qx, qy;

  CompiledField() = default;
  explicit CompiledField(const VectorField& f);

  Point operator()(const Point& z) const { return {p(z), q(z)}; }
  double divergence(const Point& z) const { return px(z) + qy(z); }
};

/// Time-parameterized solution with continuous output between steps.
class Trajectory {
 public:
  struct Sample {
    double t;
    Point point;
  };

  const std::vector<Sample>& samples() const { return samples_; }
  double t_begin() const { return samples_.front().t; }
  double t_end() const { return samples_.back().t; }
  /// Dense-output evaluation for t in [t_begin, t_end].
  Point at(double t) const;

  // Builder interface used by the integrators.
  void begin(double t, const Point& p);
  void append(double step_t0, double step_h, const Point& p, const std::array<Point, 5>& coefficients);
  /// Replaces the last sample's endpoint (after truncating the final step at
  /// an event or end time); the stored polynomial remains valid there.
  void truncate_last(double t, const Point& p);
  /// Maps t -> -t (for trajectories computed on the reversed field).
  void negate_time();

 private:
  std::vector<Sample> samples_;
  // coeffs_[k] spans samples_[k] .. samples_[k+1]; its parameter range is
  // the original (untruncated) step [step_t0_[k], step_t0_[k] + step_h_[k]],
  // in unnegated time.
  std::vector<std::array<Point, 5>> coeffs_;
  std::vector<double> step_t0_;
  std::vector<double> step_h_;
  bool negated_ = false;
};

/// Integrates x from p0 over [0, t_end] (t_end may be negative). Throws
/// IntegrationError with the last reliable time on step-size underflow.
Trajectory flow(const VectorField& x, const Point& p0, double t_end, const IntegratorOptions& opts = {});

struct CycleOptions {
  IntegratorOptions integrator{};
  double t_max = 1e3;
  double closure_tolerance = 1e-8;
  int max_newton = 60;
  /// Integration steps allowed for a single return.
  long max_steps = 2'000'000;
  int orbit_samples = 256;
  /// A return attempt stops once it is this far from the anchor; zero means
  /// 1e4 (1 + |anchor|).
  double escape_radius = 0.0;
};

struct CycleReport {
  Point anchor{};
  double period = 0.0;
  /// Characteristic exponent: integral of the divergence over one period.
  double exponent = 0.0;
  /// Accumulated local error estimate of `exponent`.
  double exponent_error = 0.0;
  /// exp(exponent).
  double multiplier = 0.0;
  /// Derivative of the return map at the fixed point, from the normal
  /// variational equation (an estimate independent of `exponent`).
  double return_derivative = 0.0;
  double closure_error = 0.0;
  bool stable = false;
  bool hyperbolic = false;
  /// True when a same-direction crossing of the section line far from the
  /// anchor was skipped, so the detected period may not be minimal.
  bool winding_ambiguous = false;
  /// One period starting at the anchor, in forward time, uniformly sampled.
  std::vector<Point> orbit;
  std::vector<std::string> warnings;
};

inline constexpr const char* kNonHyperbolicWarning = "non-hyperbolic";

/// |exponent| > max(1e-6, 10 * estimated error).
bool is_hyperbolic_exponent(double exponent, double error);

/// Newton iteration on the first-return displacement along the line through
/// `seed` with normal `section_normal` (default: flow direction at seed).
/// Unstable cycles are refined on the reversed field and mapped back.
///
/// Throws InvalidArgument for a non-transverse section, NoCycle when no
/// return happens within t_max in either time direction, NonConvergence on
/// Newton stagnation. A return derivative within 1e-12 of 1 yields a report
/// with hyperbolic = false and the kNonHyperbolicWarning entry.
CycleReport refine_cycle(const VectorField& x, const Point& seed, std::optional<Point> section_normal = std::nullopt,
                         const CycleOptions& opts = {});

/// Cycle report for a closed component of an invariant curve C = 0 through
/// (the projection of) `seed`. The flow is integrated on the curve, each step
/// projected back along the gradient, so arcs where the curve is strongly
/// repelling do not throw the orbit off it. C must be invariant under x.
/// Throws NoCycle when no return happens within t_max.
CycleReport invariant_oval_cycle(const VectorField& x, const Poly& curve, const Point& seed,
                                 const CycleOptions& opts = {});

struct ExponentEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// Re-integrates the divergence along the report's orbit for one period.
ExponentEstimate divergence_exponent(const VectorField& x, const CycleReport& report,
                                     const IntegratorOptions& opts = {});

struct CountOptions {
  CycleOptions cycle{};
  /// Integration time used to let a seed settle onto an attractor.
  double transient = 200.0;
  double dedupe_distance = 1e-4;
};

/// Lower-bound estimator for the hyperbolic limit cycles inside `region`.
/// Seeds come from a Halton lattice; each is pushed forward and backward in
/// time and the endpoints are refined. Results are in seed order.
std::vector<CycleReport> count_cycles(const VectorField& x, const Region& region, int seed_count = 64,
                                      const CountOptions& opts = {});

}  // namespace limcyc
