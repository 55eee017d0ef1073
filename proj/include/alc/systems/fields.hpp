#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "alc/algebra/bipoly.hpp"

namespace alc::systems {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// A BiPoly compiled to double coefficients at a fixed parameter value.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(const algebra::BiPoly& p, double param = 0.0);

  double operator()(const Vec2& p) const;
  int max_degree() const { return max_deg_; }

 private:
  struct Term {
    int i, j;
    double c;
  };
  std::vector<Term> terms_;
  int max_deg_ = 0;
};

/// Real-valued function on the plane with its gradient. Either compiled from an exact
/// polynomial (which is then retained) or given in closed form.
class ScalarField {
 public:
  using ValueFn = std::function<double(const Vec2&)>;
  using GradientFn = std::function<Vec2(const Vec2&)>;

  ScalarField() = default;
  static ScalarField polynomial(algebra::BiPoly p, double param = 0.0);
  static ScalarField closed_form(ValueFn value, GradientFn gradient);
  static ScalarField constant(double c);

  double operator()(const Vec2& p) const { return value_(p); }
  Vec2 gradient(const Vec2& p) const { return gradient_(p); }
  const std::optional<algebra::BiPoly>& poly() const { return poly_; }
  bool is_polynomial() const { return poly_.has_value(); }
  /// Parameter value the polynomial was compiled at.
  double param() const { return param_; }

 private:
  ValueFn value_;
  GradientFn gradient_;
  std::optional<algebra::BiPoly> poly_;
  double param_ = 0.0;
};

/// x' = P(x, y), y' = Q(x, y).
class PlanarSystem {
 public:
  PlanarSystem() = default;
  PlanarSystem(ScalarField p, ScalarField q) : p_(std::move(p)), q_(std::move(q)) {}
  static PlanarSystem polynomial(const algebra::BiPoly& p, const algebra::BiPoly& q, double param = 0.0);

  Vec2 field(const Vec2& pt) const { return {p_(pt), q_(pt)}; }
  Mat2 jacobian(const Vec2& pt) const;
  double divergence(const Vec2& pt) const;

  const ScalarField& P() const { return p_; }
  const ScalarField& Q() const { return q_; }
  bool is_polynomial() const { return p_.is_polynomial() && q_.is_polynomial(); }
  bool transcendental() const { return !is_polynomial(); }

 private:
  ScalarField p_;
  ScalarField q_;
};

/// Level set f = 0 with cofactor k: grad f . F = k f.
struct InvariantCurve {
  ScalarField f;
  ScalarField k;

  Vec2 gradient(const Vec2& p) const { return f.gradient(p); }
};

/// div = dP/dx + dQ/dy. Exact for polynomial systems, closed form (trace of the Jacobian)
/// otherwise.
ScalarField divergence(const PlanarSystem& system);
algebra::BiPoly divergence(const algebra::BiPoly& p, const algebra::BiPoly& q);

/// The exact polynomial P f_x + Q f_y - k f; the zero polynomial certifies invariance.
algebra::BiPoly cofactor_residual(const PlanarSystem& system, const InvariantCurve& curve);

/// max over pts of |grad f . F - k f|.
double pointwise_residual(const PlanarSystem& system, const InvariantCurve& curve, const std::vector<Vec2>& pts);

/// Minimum gradient norm of f over points that lie on f = 0 within on_curve_tol.
double gradient_nonvanishing_check(const InvariantCurve& curve, const std::vector<Vec2>& pts,
                                   double on_curve_tol = 1e-10);

/// The field h^{-1} F, i.e. undoing a time reparameterisation by the factor h.
PlanarSystem divide_by_time_factor(const PlanarSystem& system, const ScalarField& h);

}  // namespace alc::systems
