#include "alc/ovalquad/oval_chart.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "alc/errors.hpp"
#include "alc/systems/catalog.hpp"

namespace alc::ovalquad {

using systems::SystemId;

std::string to_string(Orientation o) { return o == Orientation::clockwise ? "clockwise" : "counterclockwise"; }

double OvalChart::y(double tau, int sign) const {
  const double g0 = std::max(0.0, radicand(tau, tau - tau1, tau2 - tau));
  return branch(tau, std::sqrt(g0), sign);
}

Vec2 OvalChart::point(double tau, double d1, double d2, int sign) const {
  const double g0 = std::max(0.0, radicand(tau, d1, d2));
  return {tau, branch(tau, std::sqrt(g0), sign)};
}

namespace {

double get(const std::map<std::string, double>& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) throw PreconditionError("missing parameter " + name);
  return it->second;
}

double ch1_cubic(double a, double t) { return -4.0 * a * t * t * t + (4.0 * a + 1.0) * t * t + 2.0 * t + 1.0; }

double bracket_root(const std::function<double(double)>& g, double lo, double hi) {
  boost::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(52);
  auto r = boost::math::tools::toms748_solve(g, lo, hi, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

std::pair<double, double> turning_points(int id_int, const std::map<std::string, double>& params) {
  switch (static_cast<SystemId>(id_int)) {
    case SystemId::nalc: {
      const double n = get(params, "n");
      const double pi = std::numbers::pi;
      return {-pi / 2 + 2 * pi * n, pi / 2 + 2 * pi * n};
    }
    case SystemId::chin2:
      return {-1.0, 1.0};
    case SystemId::yablonskii: {
      const double a = get(params, "a"), b = get(params, "b");
      return {std::min(a, b), std::max(a, b)};
    }
    case SystemId::chlls: {
      // roots of a x^2 - x + 1
      const double a = get(params, "a");
      const double r = std::sqrt(1.0 - 4.0 * a);
      return {2.0 / (1.0 + r), (1.0 + r) / (2.0 * a)};
    }
    case SystemId::fil_transformed: {
      // roots of c u^2 - u + c
      const double c = get(params, "c");
      const double r = std::sqrt(1.0 - 4.0 * c * c);
      return {2.0 * c / (1.0 + r), (1.0 + r) / (2.0 * c)};
    }
    case SystemId::ch1_transformed: {
      const double a = get(params, "a");
      auto g = [a](double t) { return ch1_cubic(a, t); };
      // g(-1) = 8a < 0 and g > 0 at the local maximum m for a inside the domain
      const double m = -(3.0 + std::sqrt(17.0)) / 2.0;
      if (!(g(m) > 0.0)) throw DomainError("ch1_transformed: no oval at a = " + std::to_string(a));
      double lo = 2.0 * m;
      while (g(lo) >= 0.0) {
        lo *= 2.0;
        if (lo < -1e12) throw NumericalError("ch1_transformed: could not bracket the left turning point");
      }
      return {bracket_root(g, lo, m), bracket_root(g, m, -1.0)};
    }
    default:
      throw PreconditionError("no oval chart for " + systems::to_string(static_cast<SystemId>(id_int)));
  }
}

std::optional<OvalChart> build_oval_chart(int id_int, const std::map<std::string, double>& params,
                                          const systems::PlanarSystem& system) {
  const auto id = static_cast<SystemId>(id_int);
  OvalChart chart;
  auto plain = [](double, double sqrt_g, int sign) { return sign * sqrt_g; };
  switch (id) {
    case SystemId::nalc:
      chart.radicand = [](double, double d1, double d2) { return std::sin(std::min(d1, d2)); };
      chart.branch = plain;
      break;
    case SystemId::chin2:
      chart.radicand = [](double, double d1, double d2) { return d1 * d2; };
      chart.branch = plain;
      break;
    case SystemId::yablonskii: {
      const double c = get(params, "c");
      chart.radicand = [](double t, double d1, double d2) { return t * t * d1 * d2; };
      chart.branch = [c](double t, double sqrt_g, int sign) { return -c * t * t + sign * sqrt_g; };
      break;
    }
    case SystemId::chlls: {
      const double a = get(params, "a");
      chart.radicand = [a](double t, double d1, double d2) { return a * t * d1 * d2; };
      chart.branch = [](double t, double sqrt_g, int sign) { return (-1.0 + 2.0 * sign * sqrt_g) / (2.0 * t); };
      break;
    }
    case SystemId::fil_transformed: {
      const double c = get(params, "c");
      chart.radicand = [c](double t, double d1, double d2) { return c * t * d1 * d2; };
      chart.branch = plain;
      break;
    }
    case SystemId::ch1_transformed:
      break;
    default:
      return std::nullopt;
  }
  const auto [t1, t2] = turning_points(id_int, params);
  chart.tau1 = t1;
  chart.tau2 = t2;
  if (id == SystemId::ch1_transformed) {
    const double a = get(params, "a");
    // third root by Vieta: t1 + t2 + t3 = (4a + 1) / (4a)
    const double t3 = (4.0 * a + 1.0) / (4.0 * a) - t1 - t2;
    chart.radicand = [a, t3](double t, double d1, double d2) { return 4.0 * a * d1 * d2 * (t - t3); };
    chart.branch = plain;
  }
  const systems::ScalarField p = system.P();
  chart.p_along = [p](const Vec2& pt) { return p(pt); };
  const double mid = 0.5 * (t1 + t2);
  chart.orientation = chart.p_along(chart.point(mid, 1)) > 0.0 ? Orientation::clockwise : Orientation::counterclockwise;
  return chart;
}

}  // namespace alc::ovalquad
