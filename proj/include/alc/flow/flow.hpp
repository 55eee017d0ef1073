#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "alc/flow/dopri5.hpp"
#include "alc/ovalquad/oval_chart.hpp"
#include "alc/systems/fields.hpp"

namespace alc::flow {

using systems::InvariantCurve;
using systems::Mat2;
using systems::PlanarSystem;
using systems::ScalarField;
using systems::Vec2;
using ovalquad::Orientation;

struct FlowOptions {
  double rtol = 1e-11;
  double atol = 1e-13;
  long max_steps = 5'000'000;
  /// Time cap for a return to the section.
  double max_return_time = 1e4;

  OdeOptions ode() const { return {rtol, atol, 0.0, max_steps}; }
};

/// Section line {anchor + s * direction}. Crossings are detected on g(q) = (q - anchor) . n with
/// n the direction rotated so that n . F(anchor) > 0; only crossings with g increasing count.
struct SectionSpec {
  Vec2 anchor;
  Vec2 direction;
  /// Returns further than this from the anchor (in s) are treated as a different branch of the
  /// section and skipped.
  double half_width = std::numeric_limits<double>::infinity();

  /// Section through p0 perpendicular to F(p0).
  static SectionSpec across_flow(const PlanarSystem& system, const Vec2& p0,
                                 double half_width = std::numeric_limits<double>::infinity());
  /// Section through p0 along grad f(p0).
  static SectionSpec along_gradient(const InvariantCurve& curve, const Vec2& p0,
                                    double half_width = std::numeric_limits<double>::infinity());
};

struct OrbitSample {
  double t, x, y;
};

struct OrbitTrace {
  PlanarSystem system;
  Vec2 p0{0.0, 0.0};
  std::vector<OrbitSample> samples;
  std::vector<DenseSegment> segments;  ///< dense output on (x, y)
  double period = 0.0;                 ///< end time of the trace; the period once closed
  bool closed = false;
  double closure = 0.0;  ///< |gamma(T) - gamma(0)|
  double displacement = 0.0;  ///< |d(s*)| of the return map at the accepted point
  /// max |f| over the samples; NaN when no curve was attached
  double f_drift = std::numeric_limits<double>::quiet_NaN();
  Orientation orientation = Orientation::counterclockwise;

  /// Point on the trace at time t in [0, period].
  Vec2 at(double t) const;
};

/// Integrates x' = F(x) from p0 over [0, t_end]. Records every accepted step.
OrbitTrace integrate_flow(const PlanarSystem& system, const Vec2& p0, double t_end, const FlowOptions& opts = {},
                          const InvariantCurve* curve = nullptr);
OrbitTrace integrate_flow(const PlanarSystem& system, const Vec2& p0, double t_end, double tol);

/// Fixed point of the Poincare return map on the section by secant iteration on d(s) = sigma(s) - s.
/// tol bounds |d(s*)|; a nonpositive tol selects 1e-10 * max(1, |anchor|).
OrbitTrace find_periodic_orbit(const PlanarSystem& system, const SectionSpec& section, double tol = 0.0,
                               const FlowOptions& opts = {}, const InvariantCurve* curve = nullptr);
/// Section across the flow at the guess.
OrbitTrace find_periodic_orbit(const PlanarSystem& system, const Vec2& guess, double tol = 0.0,
                               const FlowOptions& opts = {}, const InvariantCurve* curve = nullptr);

using Evaluable = std::function<double(const Vec2&)>;

/// int_0^T g(gamma(t)) dt with g carried as an extra state variable.
double orbit_integral(const OrbitTrace& orbit, const Evaluable& g, const FlowOptions& opts = {});

struct OrbitIntegrals {
  double div = 0.0;
  double k = 0.0;
};
/// Both integrals from one augmented integration.
OrbitIntegrals orbit_integrals(const OrbitTrace& orbit, const InvariantCurve& curve, const FlowOptions& opts = {});

/// |int div - int k|. Throws PreconditionError when some sample q drifts off f = 0 by more than drift_tol,
/// measured as |f(q)| / max(1, |grad f(q)| max(1, |q|)).
double theorem_residual(const PlanarSystem& system, const InvariantCurve& curve, const OrbitTrace& orbit,
                        double drift_tol = 1e-7, const FlowOptions& opts = {});

struct Monodromy {
  Mat2 M = Mat2::Identity();
  Vec2 p0{0.0, 0.0};
  Vec2 F0{0.0, 0.0};
  double period = 0.0;
  double I_div = 0.0;
  double I_k = std::numeric_limits<double>::quiet_NaN();  ///< NaN without a curve

  /// |det M - exp(I_div)| / exp(I_div)
  double liouville_residual() const;
  /// |M F0 - F0| / |F0|
  double flow_direction_residual() const;
  /// |grad f(p0) M - exp(I_k) grad f(p0)| / |grad f(p0)|
  double left_eigen_residual(const Vec2& grad_f) const;
};

/// M = D Phi_T(p0) from the first-order variational equations integrated alongside the flow.
Monodromy monodromy_matrix(const PlanarSystem& system, const OrbitTrace& orbit, const InvariantCurve* curve = nullptr,
                           const FlowOptions& opts = {});

/// max over accepted steps on [0, t_end] of |f(Phi_t(q)) - f(q) exp(int_0^t k)| / (|f(q)| exp(int_0^t k)).
double exponential_propagation_residual(const PlanarSystem& system, const InvariantCurve& curve, const Vec2& q,
                                        double t_end, const FlowOptions& opts = {});

/// CSV with header t,x,y,f,int_div,int_k (f and int_k empty without a curve).
void write_orbit_csv(std::ostream& os, const OrbitTrace& orbit, const InvariantCurve* curve = nullptr,
                     const FlowOptions& opts = {});

}  // namespace alc::flow
