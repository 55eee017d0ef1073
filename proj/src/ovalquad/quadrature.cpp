#include "alc/ovalquad/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "alc/errors.hpp"

namespace alc::ovalquad {

namespace {

// magnitude: |value|, or the L1 norm for tanh-sinh, which is what that rule's termination test uses.
QuadResult checked(double value, double error, const QuadratureSpec& spec, double magnitude) {
  if (!std::isfinite(value)) throw ConvergenceError("quadrature produced a non-finite value");
  if (error > std::max(spec.abs_tol, spec.rel_tol * magnitude)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "quadrature did not converge: value " << value << ", error estimate " << error;
    throw ConvergenceError(msg.str());
  }
  return {value, error};
}

}  // namespace

QuadResult quadrature_split(const SplitIntegrand& fn, double a, double b, const QuadratureSpec& spec) {
  if (!(a < b)) throw PreconditionError("quadrature requires a < b");
  if (!(spec.abs_tol > 0.0 && spec.rel_tol > 0.0)) throw PreconditionError("quadrature tolerance must be positive");
  const double r = 0.5 * (b - a);
  // tau is rebuilt from the nearer endpoint so it never rounds onto an end
  double error = 0.0;

  if (spec.method == QuadMethod::tanh_sinh) {
    // z in (-1, 1); zc is 1 - z for z > 0 and -(1 + z) for z < 0
    auto g = [&](double z, double zc) {
      double d1, d2;
      if (zc > 0.0 || (zc == 0.0 && z > 0.0)) {
        d2 = r * zc;
        d1 = 2.0 * r - d2;
      } else {
        d1 = -r * zc;
        d2 = 2.0 * r - d1;
      }
      return r * fn(d1 <= d2 ? a + d1 : b - d2, d1, d2);
    };
    boost::math::quadrature::tanh_sinh<double> ts(static_cast<std::size_t>(spec.max_levels));
    double l1 = 0.0;
    const double v = ts.integrate(g, spec.rel_tol, &error, &l1);
    return checked(v, error, spec, std::max(l1, std::abs(v)));
  }

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const unsigned depth = static_cast<unsigned>(spec.max_levels);
  if (spec.sine_substitution) {
    // 1 + sin(theta) = 2 sin^2(pi/4 + theta/2), 1 - sin(theta) = 2 sin^2(pi/4 - theta/2)
    auto g = [&](double th) {
      const double sp = std::sin(std::numbers::pi / 4 + th / 2), sm = std::sin(std::numbers::pi / 4 - th / 2);
      const double d1 = 2.0 * r * sp * sp, d2 = 2.0 * r * sm * sm;
      return r * std::cos(th) * fn(d1 <= d2 ? a + d1 : b - d2, d1, d2);
    };
    const double h = std::numbers::pi / 2;
    const double v = GK::integrate(g, -h, h, depth, spec.rel_tol, &error);
    return checked(v, error, spec, std::abs(v));
  }
  auto g = [&](double t) { return fn(t, t - a, b - t); };
  const double v = GK::integrate(g, a, b, depth, spec.rel_tol, &error);
  return checked(v, error, spec, std::abs(v));
}

QuadResult quadrature(const std::function<double(double)>& fn, double a, double b, const QuadratureSpec& spec) {
  return quadrature_split([&fn](double t, double, double) { return fn(t); }, a, b, spec);
}

}  // namespace alc::ovalquad
