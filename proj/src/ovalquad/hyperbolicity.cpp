#include "alc/ovalquad/hyperbolicity.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "alc/elliptic/elliptic.hpp"
#include "alc/errors.hpp"

namespace alc::ovalquad {

using systems::CatalogEntry;
using systems::SystemId;

namespace {

constexpr double kW = -3.0;

const OvalChart& chart_of(const CatalogEntry& e) {
  if (!e.oval_chart) throw PreconditionError(systems::to_string(e.id) + " has no oval chart");
  return *e.oval_chart;
}

void set_original(const CatalogEntry& e, HyperbolicityResult& r) {
  if (e.map) r.D_original = e.map->orientation_sign * r.D;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::reduced_quadrature: return "reduced_quadrature";
    case Method::raw_quadrature: return "raw_quadrature";
    case Method::ode: return "ode";
    case Method::closed_form: return "closed_form";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "reduced" || name == "reduced_quadrature") return Method::reduced_quadrature;
  if (name == "raw" || name == "raw_quadrature") return Method::raw_quadrature;
  if (name == "ode") return Method::ode;
  if (name == "closed" || name == "closed_form") return Method::closed_form;
  throw DomainError("unknown method: " + name);
}

std::pair<double, double> oval_endpoints(const CatalogEntry& entry) {
  const OvalChart& ch = chart_of(entry);
  return {ch.tau1, ch.tau2};
}

std::pair<double, double> oval_endpoints(SystemId id, double param) {
  const auto names = systems::parameter_names(id);
  if (names.size() != 1) throw PreconditionError(systems::to_string(id) + " is not a one-parameter family");
  return turning_points(static_cast<int>(id), {{names[0], param}});
}

bool has_reduced_integrand(SystemId id) {
  return id == SystemId::chlls || id == SystemId::fil_transformed || id == SystemId::ch1_transformed ||
         id == SystemId::filipstov || id == SystemId::chavarriga;
}

HyperbolicityResult reduced_hyperbolicity_integral(const CatalogEntry& entry, const QuadratureSpec& spec) {
  HyperbolicityResult out;
  out.method = Method::reduced_quadrature;
  out.w = kW;
  switch (entry.id) {
    case SystemId::filipstov: {
      const algebra::Rational& a = entry.params.at("a");
      const CatalogEntry t = systems::catalog_instantiate(SystemId::fil_transformed, {{"c", 4 * a / (3 - 5 * a)}});
      const HyperbolicityResult r = reduced_hyperbolicity_integral(t, spec);
      out.D = *r.D_original;
      out.error = r.error;
      return out;
    }
    case SystemId::chavarriga: {
      const CatalogEntry t = systems::catalog_instantiate(SystemId::ch1_transformed, entry.params);
      const HyperbolicityResult r = reduced_hyperbolicity_integral(t, spec);
      out.D = *r.D_original;
      out.error = r.error;
      return out;
    }
    default:
      break;
  }
  const OvalChart& ch = chart_of(entry);
  const double p = entry.primary_param();
  SplitIntegrand fn;
  double factor = 1.0;
  switch (entry.id) {
    case SystemId::chlls:
      factor = 8.0;
      fn = [&ch, p](double t, double d1, double d2) {
        return std::sqrt(std::max(0.0, ch.radicand(t, d1, d2))) / (t * (1.0 + 8.0 * t + p * t * t));
      };
      break;
    case SystemId::fil_transformed:
      factor = 8.0 * std::sqrt(1.0 + 2.0 * p);
      fn = [&ch, p](double t, double d1, double d2) {
        return std::sqrt(std::max(0.0, ch.radicand(t, d1, d2))) /
               ((t + 1.0) * (p * t * t + (17.0 * p + 8.0) * t + 4.0 + 8.0 * p));
      };
      break;
    case SystemId::ch1_transformed:
      factor = 2.0;
      fn = [&ch, p](double t, double d1, double d2) {
        return std::sqrt(std::max(0.0, ch.radicand(t, d1, d2))) / ((t - 1.0) * t * (p * t + 2.0));
      };
      break;
    default:
      throw PreconditionError("no reduced integrand for " + systems::to_string(entry.id));
  }
  const QuadResult q = quadrature_split(fn, ch.tau1, ch.tau2, spec);
  out.D = factor * q.value;
  out.error = factor * q.error;
  set_original(entry, out);
  return out;
}

QuadResult raw_divergence_integral(const CatalogEntry& entry, const flow::Evaluable& g, const QuadratureSpec& spec) {
  const OvalChart& ch = chart_of(entry);
  const double sign = ch.orientation == Orientation::clockwise ? 1.0 : -1.0;
  auto fn = [&](double t, double d1, double d2) {
    const Vec2 up = ch.point(t, d1, d2, 1), lo = ch.point(t, d1, d2, -1);
    const double pu = ch.p_along(up), pl = ch.p_along(lo);
    if (pu == 0.0 || pl == 0.0) return 0.0;  // only reachable at the turning points themselves
    return g(up) / pu - g(lo) / pl;
  };
  QuadResult q = quadrature_split(fn, ch.tau1, ch.tau2, spec);
  q.value *= sign;
  return q;
}

HyperbolicityResult ode_hyperbolicity(const CatalogEntry& entry, const flow::FlowOptions& opts) {
  const flow::OrbitTrace orb = flow::find_periodic_orbit(entry.system, entry.seed, 0.0, opts, &entry.curve);
  const flow::OrbitIntegrals I = flow::orbit_integrals(orb, entry.curve, opts);
  HyperbolicityResult out;
  out.method = Method::ode;
  out.D = I.div;
  // the identity int div = int k gives an independent error proxy
  out.error = std::abs(I.div - I.k);
  set_original(entry, out);
  return out;
}

bool has_closed_form(SystemId id) { return id == SystemId::chin2 || id == SystemId::chlls; }

double chin_closed_form(double a, double b, double c) {
  const double n2 = a * a + b * b;
  if (!(c * c > n2) || a == 0.0) throw DomainError("chin closed form: requires a != 0 and c^2 > a^2 + b^2");
  return 4.0 * std::numbers::pi * a / n2 * std::copysign(1.0, c) * (std::abs(c) / std::sqrt(c * c - n2) - 1.0);
}

HyperbolicityResult closed_form_hyperbolicity(const CatalogEntry& entry) {
  HyperbolicityResult out;
  out.method = Method::closed_form;
  if (entry.id == SystemId::chin2) {
    out.D = chin_closed_form(algebra::to_double(entry.params.at("a")), algebra::to_double(entry.params.at("b")),
                             algebra::to_double(entry.params.at("c")));
  } else if (entry.id == SystemId::chlls) {
    out.D = elliptic::D_closed_form(entry.primary_param());
  } else {
    throw PreconditionError("no closed form for " + systems::to_string(entry.id));
  }
  out.error = 1e-14 * std::max(1.0, std::abs(out.D));
  return out;
}

HyperbolicityResult hyperbolicity(const CatalogEntry& entry, Method method) {
  switch (method) {
    case Method::reduced_quadrature:
      return reduced_hyperbolicity_integral(entry);
    case Method::raw_quadrature: {
      const systems::PlanarSystem& sys = entry.system;
      const QuadResult q = raw_divergence_integral(entry, [&sys](const Vec2& p) { return sys.divergence(p); });
      HyperbolicityResult out;
      out.method = Method::raw_quadrature;
      out.D = q.value;
      out.error = q.error;
      set_original(entry, out);
      return out;
    }
    case Method::ode:
      return ode_hyperbolicity(entry);
    case Method::closed_form:
      return closed_form_hyperbolicity(entry);
  }
  throw PreconditionError("unknown method");
}

systems::Stability stability_from_D(double D, double tol) {
  if (D < -tol) return systems::Stability::stable;
  if (D > tol) return systems::Stability::unstable;
  return systems::Stability::center_band;
}

std::vector<SweepRow> sweep(SystemId id, const std::vector<algebra::Rational>& params, double rel_tol) {
  const auto names = systems::parameter_names(id);
  if (names.size() != 1 || id == SystemId::nalc)
    throw PreconditionError(systems::to_string(id) + " is not a one-parameter polynomial family");
  std::vector<SweepRow> rows;
  for (const algebra::Rational& p : params) {
    const CatalogEntry e = systems::catalog_instantiate(id, {{names[0], p}});
    SweepRow row{algebra::to_double(p), reduced_hyperbolicity_integral(e), hyperbolicity(e, Method::raw_quadrature),
                 ode_hyperbolicity(e), false};
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); };
    row.agree = rel(row.reduced.D, row.raw.D) <= rel_tol && rel(row.reduced.D, row.ode.D) <= rel_tol &&
                rel(row.raw.D, row.ode.D) <= rel_tol;
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  const auto old = os.precision(17);
  os << "param,D_reduced,D_raw,D_ode,err_reduced,err_raw,err_ode,agree\n";
  for (const SweepRow& r : rows)
    os << r.param << ',' << r.reduced.D << ',' << r.raw.D << ',' << r.ode.D << ',' << r.reduced.error << ','
       << r.raw.error << ',' << r.ode.error << ',' << (r.agree ? "true" : "false") << '\n';
  os.precision(old);
}

}  // namespace alc::ovalquad
