#include "alc/systems/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "alc/errors.hpp"

namespace alc::systems {

using algebra::BiPoly;

NumericPoly::NumericPoly(const BiPoly& p, double param) {
  terms_.reserve(p.terms().size());
  for (const auto& [e, c] : p.terms()) {
    terms_.push_back({e.first, e.second, c.evaluate(param)});
    max_deg_ = std::max({max_deg_, e.first, e.second});
  }
}

double NumericPoly::operator()(const Vec2& p) const {
  // powers up to degree 8 cover every catalog polynomial without allocation
  constexpr int kStack = 9;
  double xs[kStack], ys[kStack];
  std::vector<double> xv, yv;
  double* xp = xs;
  double* yp = ys;
  if (max_deg_ >= kStack) {
    xv.resize(static_cast<std::size_t>(max_deg_) + 1);
    yv.resize(static_cast<std::size_t>(max_deg_) + 1);
    xp = xv.data();
    yp = yv.data();
  }
  xp[0] = yp[0] = 1.0;
  for (int i = 1; i <= max_deg_; ++i) {
    xp[i] = xp[i - 1] * p.x();
    yp[i] = yp[i - 1] * p.y();
  }
  double acc = 0.0;
  for (const auto& t : terms_) acc += t.c * xp[t.i] * yp[t.j];
  return acc;
}

ScalarField ScalarField::polynomial(BiPoly p, double param) {
  ScalarField s;
  NumericPoly value(p, param), dx(p.partial(0), param), dy(p.partial(1), param);
  s.value_ = [value](const Vec2& pt) { return value(pt); };
  s.gradient_ = [dx, dy](const Vec2& pt) { return Vec2(dx(pt), dy(pt)); };
  s.poly_ = std::move(p);
  s.param_ = param;
  return s;
}

ScalarField ScalarField::closed_form(ValueFn value, GradientFn gradient) {
  ScalarField s;
  s.value_ = std::move(value);
  s.gradient_ = std::move(gradient);
  return s;
}

ScalarField ScalarField::constant(double c) {
  return closed_form([c](const Vec2&) { return c; }, [](const Vec2&) { return Vec2(0.0, 0.0); });
}

PlanarSystem PlanarSystem::polynomial(const BiPoly& p, const BiPoly& q, double param) {
  if (p.vars() != q.vars()) throw ContextError("P and Q use different variable names");
  return {ScalarField::polynomial(p, param), ScalarField::polynomial(q, param)};
}

Mat2 PlanarSystem::jacobian(const Vec2& pt) const {
  Mat2 m;
  m.row(0) = p_.gradient(pt).transpose();
  m.row(1) = q_.gradient(pt).transpose();
  return m;
}

double PlanarSystem::divergence(const Vec2& pt) const { return p_.gradient(pt).x() + q_.gradient(pt).y(); }

BiPoly divergence(const BiPoly& p, const BiPoly& q) { return p.partial(0) + q.partial(1); }

ScalarField divergence(const PlanarSystem& system) {
  if (system.is_polynomial())
    return ScalarField::polynomial(divergence(*system.P().poly(), *system.Q().poly()), system.P().param());
  // closed form: trace of the Jacobian
  return ScalarField::closed_form([system](const Vec2& p) { return system.divergence(p); },
                                  [](const Vec2&) -> Vec2 {
                                    throw PreconditionError("gradient of a closed-form divergence is not available");
                                  });
}

BiPoly cofactor_residual(const PlanarSystem& system, const InvariantCurve& curve) {
  if (!system.is_polynomial() || !curve.f.is_polynomial() || !curve.k.is_polynomial())
    throw PreconditionError("cofactor_residual needs polynomial P, Q, f and k; use pointwise_residual");
  const BiPoly& f = *curve.f.poly();
  return *system.P().poly() * f.partial(0) + *system.Q().poly() * f.partial(1) - *curve.k.poly() * f;
}

double pointwise_residual(const PlanarSystem& system, const InvariantCurve& curve, const std::vector<Vec2>& pts) {
  double worst = 0.0;
  for (const Vec2& p : pts) {
    const double r = curve.gradient(p).dot(system.field(p)) - curve.k(p) * curve.f(p);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double gradient_nonvanishing_check(const InvariantCurve& curve, const std::vector<Vec2>& pts, double on_curve_tol) {
  if (pts.empty()) throw PreconditionError("gradient check needs at least one point");
  double best = std::numeric_limits<double>::infinity();
  for (const Vec2& p : pts) {
    const double fv = curve.f(p);
    if (!(std::abs(fv) <= on_curve_tol))
      throw PreconditionError("point (" + std::to_string(p.x()) + ", " + std::to_string(p.y()) +
                              ") is not on the curve: |f| = " + std::to_string(std::abs(fv)));
    best = std::min(best, curve.gradient(p).norm());
  }
  return best;
}

PlanarSystem divide_by_time_factor(const PlanarSystem& system, const ScalarField& h) {
  auto scaled = [h](const ScalarField& g) {
    return ScalarField::closed_form([g, h](const Vec2& p) { return g(p) / h(p); },
                                    [g, h](const Vec2& p) -> Vec2 {
                                      const double hv = h(p);
                                      return g.gradient(p) / hv - g(p) * h.gradient(p) / (hv * hv);
                                    });
  };
  return {scaled(system.P()), scaled(system.Q())};
}

}  // namespace alc::systems
