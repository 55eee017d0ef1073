#include "alc/systems/catalog.hpp"

#include <cmath>
#include <numbers>

#include "alc/errors.hpp"

namespace alc::systems {

using algebra::BiPoly;
using algebra::Rational;

namespace {

struct FamilyText {
  const char* P;
  const char* Q;
  const char* f;
  const char* k;
};

// %A, %B, %C are replaced by parenthesised rationals for the multi-parameter families.
const FamilyText kChin = {"-y*(%A*x + %B*y + %C) - (x^2 + y^2 - 1)", "x*(%A*x + %B*y + %C)", "x^2 + y^2 - 1",
                          "-2*x"};
const FamilyText kYab = {
    "-4*%A*%B*%C*x - (%A + %B)*y + 3*(%A + %B)*%C*x^2 + 4*x*y",
    "(%A + %B)*%A*%B*x - 4*%A*%B*%C*y + (4*%A*%B*%C^2 - 3/2*(%A + %B)^2 + 4*%A*%B)*x^2 + 8*(%A + %B)*%C*x*y + 8*y^2",
    "(y + %C*x^2)^2 + x^2*(x - %A)*(x - %B)", "-8*%A*%B*%C + 12*(%A + %B)*%C*x + 16*y"};
const FamilyText kChlls = {"2*(1 + 2*x - 2*a*x^2 + 6*x*y)", "8 - 3*a - 14*a*x - 2*a*x*y - 8*y^2",
                           "1/4 + x - x^2 + a*x^3 + x*y + x^2*y^2", "4*(2 - 3*a*x + 2*y)"};
const FamilyText kFilipstov = {"6*(1 + a)*x + 2*y - 6*(2 + a)*x^2 + 12*x*y",
                               "15*(1 + a)*y + 3*a*(1 + a)*x^2 - 2*(9 + 5*a)*x*y + 16*y^2",
                               "3*(1 + a)*(a*x^2 + y)^2 + 2*y^2*(2*y - 3*(1 + a)*x)",
                               "30*(1 + a) - (48 + 24*a)*x + 48*y"};
const FamilyText kChavarriga = {"5*x + 6*x^2 + 4*(1 + a)*x*y + a*y^2", "x + 2*y + 4*x*y + (2 + 3*a)*y^2",
                                "x^2 + x^3 + x^2*y + 2*a*x*y^2 + 2*a*x*y^3 + a^2*y^4",
                                "10 + 18*x + (10 + 12*a)*y"};
const FamilyText kFil = {
    "-2*u*(c*u + 4 + 9*c)*(c*u^2 - u + c) - 2*s*(c*u^2 - (4 + 5*c)*u + 2*c)*v",
    "-c^2*s*(u + 1)^2*(u - 1)*(3*u + 2) - (c*u + 4 + 9*c)*(3*c*u^2 - 2*u + c)*v + 2*s*(4 + 5*c - 3*c*u)*v^2",
    "v^2 + u*(c*u^2 - u + c)", "4*s*(4 + 5*c - 3*c*u)*v - 2*(c*u + 9*c + 4)*(3*c*u^2 - 2*u + c)"};
const FamilyText kCh1 = {"(u + 1)^2 - 4*a*u^2*(u - 1) + (1 - 3*u)*v",
                         "2*(u + 1)*(3 + u + 2*a*u - a*u^2) + (1 + 4*a*u + u - 6*a*u^2)*v - 5*v^2",
                         "v^2 + 4*a*u^2*(u - 1) - (u + 1)^2", "2*(1 + u + 4*a*u - 6*a*u^2 - 5*v)"};

const algebra::VarNames kXY = {"x", "y"};
const algebra::VarNames kUV = {"u", "v"};

std::string substitute(std::string text, const ParamMap& params) {
  for (const auto& [name, value] : params) {
    const std::string key = "%" + std::string(1, static_cast<char>(std::toupper(name[0])));
    const std::string rep = "(" + algebra::to_string(value) + ")";
    for (std::size_t pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + rep.size()))
      text.replace(pos, key.size(), rep);
  }
  return text;
}

FamilyPolys parse_family(const FamilyText& t, const algebra::VarNames& vars, const algebra::ContextPtr& ctx,
                         const ParamMap& subst = {}) {
  auto p = [&](const char* s) { return algebra::parse_bipoly(substitute(s, subst), vars, ctx); };
  return {p(t.P), p(t.Q), p(t.f), p(t.k)};
}

bool one_parameter_polynomial(SystemId id) {
  return id != SystemId::nalc && id != SystemId::chin2 && id != SystemId::yablonskii;
}

std::string primary_name(SystemId id) {
  if (id == SystemId::fil_transformed) return "c";
  if (id == SystemId::nalc) return "n";
  return "a";
}

// Open interval of the single family parameter, as doubles, for the near-boundary flag.
std::pair<double, double> interval(SystemId id) {
  switch (id) {
    case SystemId::filipstov:
      return {0.0, 3.0 / 13.0};
    case SystemId::chavarriga:
    case SystemId::ch1_transformed:
      return {(-71.0 + 17.0 * std::sqrt(17.0)) / 32.0, 0.0};
    case SystemId::chlls:
      return {0.0, 0.25};
    case SystemId::fil_transformed:
      return {0.0, 0.5};
    default:
      return {0.0, 0.0};
  }
}

const Rational& require(const ParamMap& params, SystemId id, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) throw DomainError(to_string(id) + ": missing parameter " + name);
  return it->second;
}

void check_domain(SystemId id, const ParamMap& params) {
  for (const auto& [name, value] : params) {
    const auto names = parameter_names(id);
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw DomainError(to_string(id) + ": unknown parameter " + name);
  }
  auto fail = [&](const std::string& what) { throw DomainError(to_string(id) + ": requires " + what); };
  switch (id) {
    case SystemId::nalc: {
      const Rational& n = require(params, id, "n");
      if (n.get_den() != 1) fail("integer n");
      break;
    }
    case SystemId::chin2: {
      const Rational &a = require(params, id, "a"), &b = require(params, id, "b"), &c = require(params, id, "c");
      if (a == 0) fail("a != 0");
      if (!(c * c + 4 * (b + 1) > 0)) fail("c^2 + 4(b + 1) > 0");
      if (!(c * c > a * a + b * b)) fail("c^2 > a^2 + b^2");
      break;
    }
    case SystemId::yablonskii: {
      const Rational &a = require(params, id, "a"), &b = require(params, id, "b"), &c = require(params, id, "c");
      if (a * b * c == 0) fail("abc != 0");
      if (a == b) fail("a != b");
      if (!(a * b > 0)) fail("ab > 0");
      if (!(4 * c * c * (a - b) * (a - b) + (3 * a - b) * (a - 3 * b) < 0)) fail("4c^2(a - b)^2 + (3a - b)(a - 3b) < 0");
      break;
    }
    case SystemId::filipstov: {
      const Rational& a = require(params, id, "a");
      if (!(a > 0 && a < Rational(3, 13))) fail("0 < a < 3/13");
      break;
    }
    case SystemId::chavarriga:
    case SystemId::ch1_transformed: {
      // (-71 + 17 sqrt(17)) / 32 < a < 0  <=>  a < 0, 32a + 71 > 0, (32a + 71)^2 > 17^3
      const Rational& a = require(params, id, "a");
      const Rational t = 32 * a + 71;
      if (!(a < 0 && t > 0 && t * t > 4913)) fail("(-71 + 17 sqrt(17))/32 < a < 0");
      break;
    }
    case SystemId::chlls: {
      const Rational& a = require(params, id, "a");
      if (!(a > 0 && a < Rational(1, 4))) fail("0 < a < 1/4");
      break;
    }
    case SystemId::fil_transformed: {
      const Rational& c = require(params, id, "c");
      if (!(c > 0 && c < Rational(1, 2))) fail("0 < c < 1/2");
      break;
    }
  }
}

std::map<std::string, double> to_doubles(const ParamMap& params) {
  std::map<std::string, double> out;
  for (const auto& [k, v] : params) out[k] = algebra::to_double(v);
  return out;
}

Vec2 chart_seed(const ovalquad::OvalChart& chart) { return chart.point(0.5 * (chart.tau1 + chart.tau2), 1); }

CatalogEntry nalc_entry(const ParamMap& params) {
  CatalogEntry e;
  e.id = SystemId::nalc;
  e.params = params;
  const double n = algebra::to_double(params.at("n"));
  auto P = ScalarField::closed_form(
      [](const Vec2& p) {
        const double x = p.x(), y = p.y();
        return (x + y) * std::cos(x) - y * (x * x + x * y + 2 * y * y);
      },
      [](const Vec2& p) {
        const double x = p.x(), y = p.y();
        return Vec2(std::cos(x) - (x + y) * std::sin(x) - y * (2 * x + y),
                    std::cos(x) - x * x - 2 * x * y - 6 * y * y);
      });
  auto Q = ScalarField::closed_form(
      [](const Vec2& p) {
        const double x = p.x(), y = p.y();
        return (y - x) * (std::cos(x) - y * y) + 0.5 * (x * x + y * y) * std::sin(x);
      },
      [](const Vec2& p) {
        const double x = p.x(), y = p.y();
        return Vec2(-(std::cos(x) - y * y) - (y - x) * std::sin(x) + x * std::sin(x) + 0.5 * (x * x + y * y) * std::cos(x),
                    std::cos(x) - y * y - 2 * y * (y - x) + y * std::sin(x));
      });
  e.system = PlanarSystem(P, Q);
  e.curve.f = ScalarField::closed_form([](const Vec2& p) { return p.y() * p.y() - std::cos(p.x()); },
                                       [](const Vec2& p) { return Vec2(std::sin(p.x()), 2 * p.y()); });
  e.curve.k = ScalarField::closed_form(
      [](const Vec2& p) {
        const double x = p.x(), y = p.y();
        return 2 * y * (x - y) - (x + y) * std::sin(x);
      },
      [](const Vec2& p) {
        const double x = p.x(), y = p.y();
        return Vec2(2 * y - std::sin(x) - (x + y) * std::cos(x), 2 * x - 4 * y - std::sin(x));
      });
  e.expected_stability = n == 0.0 ? Stability::stable : Stability::center_band;
  e.origin = "transcendental system with invariant curve y^2 = cos x";
  return e;
}

}  // namespace

std::string to_string(SystemId id) {
  switch (id) {
    case SystemId::nalc: return "nalc";
    case SystemId::chin2: return "chin2";
    case SystemId::yablonskii: return "yablonskii";
    case SystemId::filipstov: return "filipstov";
    case SystemId::chavarriga: return "chavarriga";
    case SystemId::chlls: return "chlls";
    case SystemId::fil_transformed: return "fil_transformed";
    case SystemId::ch1_transformed: return "ch1_transformed";
  }
  return "?";
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::center_band: return "center_band";
    case Stability::hyperbolic: return "hyperbolic";
  }
  return "?";
}

SystemId parse_system_id(const std::string& name) {
  if (name == "fil") return SystemId::fil_transformed;
  if (name == "ch1") return SystemId::ch1_transformed;
  for (SystemId id : all_system_ids())
    if (to_string(id) == name) return id;
  throw DomainError("unknown system: " + name);
}

const std::vector<SystemId>& all_system_ids() {
  static const std::vector<SystemId> ids = {SystemId::nalc,       SystemId::chin2, SystemId::yablonskii,
                                            SystemId::filipstov,  SystemId::chavarriga, SystemId::chlls,
                                            SystemId::fil_transformed, SystemId::ch1_transformed};
  return ids;
}

std::vector<std::string> parameter_names(SystemId id) {
  switch (id) {
    case SystemId::nalc: return {"n"};
    case SystemId::chin2:
    case SystemId::yablonskii: return {"a", "b", "c"};
    case SystemId::fil_transformed: return {"c"};
    default: return {"a"};
  }
}

std::string parameter_domain(SystemId id) {
  switch (id) {
    case SystemId::nalc: return "n integer";
    case SystemId::chin2: return "a != 0, c^2 + 4(b + 1) > 0, c^2 > a^2 + b^2";
    case SystemId::yablonskii: return "abc != 0, a != b, ab > 0, 4c^2(a - b)^2 + (3a - b)(a - 3b) < 0";
    case SystemId::filipstov: return "0 < a < 3/13";
    case SystemId::chavarriga:
    case SystemId::ch1_transformed: return "(-71 + 17 sqrt(17))/32 < a < 0";
    case SystemId::chlls: return "0 < a < 1/4";
    case SystemId::fil_transformed: return "0 < c < 1/2";
  }
  return "";
}

FamilyPolys symbolic_family(SystemId id) {
  switch (id) {
    case SystemId::chlls: return parse_family(kChlls, kXY, algebra::make_context("a"));
    case SystemId::filipstov: return parse_family(kFilipstov, kXY, algebra::make_context("a"));
    case SystemId::chavarriga: return parse_family(kChavarriga, kXY, algebra::make_context("a"));
    case SystemId::ch1_transformed: return parse_family(kCh1, kUV, algebra::make_context("a"));
    case SystemId::fil_transformed:
      return parse_family(kFil, kUV, algebra::make_context("c", algebra::UniPoly(std::vector<Rational>{1, 2})));
    default: throw PreconditionError(to_string(id) + " is not a one-parameter polynomial family");
  }
}

FamilyPolys instantiated_family(SystemId id, const ParamMap& params) {
  if (id == SystemId::nalc) throw PreconditionError("nalc is not polynomial");
  if (id == SystemId::chin2) return parse_family(kChin, kXY, nullptr, params);
  if (id == SystemId::yablonskii) return parse_family(kYab, kXY, nullptr, params);
  const FamilyPolys sym = symbolic_family(id);
  const Rational& v = require(params, id, primary_name(id));
  return {sym.P.substitute_param(v), sym.Q.substitute_param(v), sym.f.substitute_param(v), sym.k.substitute_param(v)};
}

double CatalogEntry::primary_param() const {
  auto it = params.find(primary_name(id));
  if (it == params.end()) it = params.find("a");
  if (it == params.end()) throw PreconditionError("entry has no primary parameter");
  return algebra::to_double(it->second);
}

CatalogEntry catalog_instantiate(SystemId id, const ParamMap& params) {
  check_domain(id, params);
  const auto dparams = to_doubles(params);

  CatalogEntry e;
  if (id == SystemId::nalc) {
    e = nalc_entry(params);
  } else {
    e.id = id;
    e.params = params;
    FamilyPolys polys = instantiated_family(id, params);
    const double pv = one_parameter_polynomial(id) ? algebra::to_double(params.at(primary_name(id))) : 0.0;
    e.system = PlanarSystem::polynomial(polys.P, polys.Q, pv);
    e.curve = {ScalarField::polynomial(polys.f, pv), ScalarField::polynomial(polys.k, pv)};
    e.polys = std::move(polys);
  }
  e.domain = parameter_domain(id);
  e.oval_chart = ovalquad::build_oval_chart(static_cast<int>(id), dparams, e.system);

  switch (id) {
    case SystemId::nalc:
      break;
    case SystemId::chin2:
      e.expected_stability = params.at("a") * params.at("c") < 0 ? Stability::stable : Stability::unstable;
      e.origin = "quadratic-type system with the unit circle as limit cycle";
      break;
    case SystemId::yablonskii:
      e.expected_stability = Stability::hyperbolic;
      e.origin = "quadratic system with an algebraic limit cycle of degree four";
      break;
    case SystemId::chlls:
      e.expected_stability = Stability::unstable;
      e.origin = "quadratic system with an algebraic limit cycle of degree four";
      break;
    case SystemId::filipstov: {
      e.expected_stability = Stability::unstable;
      e.origin = "quadratic system with an algebraic limit cycle of degree four";
      const Rational& a = params.at("a");
      const Rational c = 4 * a / (3 - 5 * a);
      const CatalogEntry t = catalog_instantiate(SystemId::fil_transformed, {{"c", c}});
      e.seed = filipstov_map(algebra::to_double(c)).forward(t.seed);
      e.orientation_note = "seed mapped from the transformed chart";
      break;
    }
    case SystemId::chavarriga: {
      e.expected_stability = Stability::stable;
      e.origin = "quadratic system with an algebraic limit cycle of degree four";
      const CatalogEntry t = catalog_instantiate(SystemId::ch1_transformed, params);
      e.seed = chavarriga_map(algebra::to_double(params.at("a"))).forward(t.seed);
      e.orientation_note = "seed mapped from the transformed chart";
      break;
    }
    case SystemId::fil_transformed:
      e.expected_stability = Stability::unstable;
      e.original_stability = Stability::unstable;
      e.map = filipstov_map(dparams.at("c"));
      e.origin = "birational transform of filipstov at a = 3c/(4 + 5c)";
      break;
    case SystemId::ch1_transformed:
      e.expected_stability = Stability::unstable;
      e.original_stability = Stability::stable;
      e.map = chavarriga_map(dparams.at("a"));
      e.origin = "birational transform of chavarriga";
      break;
  }
  if (e.oval_chart) {
    e.seed = chart_seed(*e.oval_chart);
    e.orientation_note = ovalquad::to_string(e.oval_chart->orientation) + " along the chart";
  }
  if (one_parameter_polynomial(id)) {
    const auto [lo, hi] = interval(id);
    const double v = e.primary_param();
    const double tol = 1e-3 * (hi - lo);
    e.near_boundary = v - lo < tol || hi - v < tol;
  }
  return e;
}

ParamMap default_params(SystemId id) {
  switch (id) {
    case SystemId::nalc: return {{"n", 0}};
    case SystemId::chin2: return {{"a", Rational(1, 2)}, {"b", Rational(1, 4)}, {"c", -1}};
    case SystemId::yablonskii: return {{"a", 1}, {"b", 2}, {"c", Rational(1, 2)}};
    case SystemId::filipstov: return {{"a", Rational(1, 10)}};
    case SystemId::chavarriga: return {{"a", Rational(-1, 50)}};
    case SystemId::chlls: return {{"a", Rational(1, 8)}};
    case SystemId::fil_transformed: return {{"c", Rational(3, 10)}};
    case SystemId::ch1_transformed: return {{"a", Rational(-1, 50)}};
  }
  return {};
}

}  // namespace alc::systems
