#include <cmath>
#include <numbers>
#include <sstream>

#include "alc/elliptic/elliptic.hpp"
#include "alc/errors.hpp"
#include "alc/ovalquad/hyperbolicity.hpp"
#include "doctest.h"

using namespace alc::ovalquad;
using namespace alc::systems;
using alc::algebra::Rational;

namespace {

constexpr double pi = std::numbers::pi;

Rational dec(int num, int den) { return Rational(num, den); }

std::vector<Rational> chlls_grid() {
  std::vector<Rational> g;
  for (int i = 1; i <= 24; ++i) g.push_back(dec(i, 100));
  return g;
}

std::vector<Rational> fil_grid() {
  std::vector<Rational> g;
  for (int i = 1; i <= 9; ++i) g.push_back(dec(i, 20));
  return g;
}

std::vector<Rational> ch1_grid() {
  // linspace(-0.028, -0.002, 9)
  std::vector<Rational> g;
  for (int i = 0; i < 9; ++i) g.push_back(Rational(-28, 1000) + Rational(26 * i, 8000));
  return g;
}

}  // namespace

TEST_CASE("quadrature examples") {
  CHECK(quadrature([](double) { return 1.0; }, 0.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-15));
  const QuadResult semi = quadrature([](double t) { return std::sqrt(std::max(0.0, 1.0 - t * t)); }, -1.0, 1.0);
  CHECK(std::abs(semi.value - pi / 2) <= 1e-12);
  CHECK(semi.error >= 0.0);
  QuadratureSpec ts{QuadMethod::tanh_sinh};
  CHECK(std::abs(quadrature([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, ts).value - 2.0) <= 1e-10);
  // split form keeps distances to the ends exact
  const QuadResult split = quadrature_split([](double, double d1, double) { return 1.0 / std::sqrt(d1); }, 1.0,
                                            1.0 + 1e-8, ts);
  CHECK(split.value == doctest::Approx(2.0 * std::sqrt(1e-8)).epsilon(1e-10));
  // no sine substitution: plain Gauss-Kronrod
  QuadratureSpec plain;
  plain.sine_substitution = false;
  CHECK(quadrature([](double t) { return t * t; }, 0.0, 3.0, plain).value == doctest::Approx(9.0).epsilon(1e-14));

  CHECK_THROWS_AS(quadrature([](double) { return 1.0; }, 1.0, 1.0), alc::PreconditionError);
  QuadratureSpec tight{QuadMethod::gauss_sine, 1e-300, 1e-300, 1, false};
  CHECK_THROWS_AS(quadrature([](double t) { return std::abs(t - 0.3); }, 0.0, 1.0, tight), alc::ConvergenceError);
}

TEST_CASE("oval endpoints") {
  const auto [t1, t2] = oval_endpoints(SystemId::chlls, 3.0 / 16.0);
  CHECK(t1 == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(t2 == doctest::Approx(4.0).epsilon(1e-15));
  const auto [f1, f2] = oval_endpoints(SystemId::fil_transformed, 0.5 - 1e-9);
  CHECK(std::abs(f1 - 1.0) < 1e-3);
  CHECK(std::abs(f2 - 1.0) < 1e-3);
  CHECK(f1 < 1.0);
  CHECK(f2 > 1.0);
  const auto [c1, c2] = oval_endpoints(SystemId::ch1_transformed, -0.02);
  const double m = -(3.0 + std::sqrt(17.0)) / 2.0;
  CHECK(c1 < m);
  CHECK(m < c2);
  CHECK(c2 < -1.0);
  const CatalogEntry e = catalog_instantiate(SystemId::chlls, {{"a", dec(3, 16)}});
  CHECK(oval_endpoints(e).first == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS(oval_endpoints(SystemId::chin2, 0.1), alc::PreconditionError);
}

TEST_CASE("charts: radicand, branch consistency, orientation") {
  for (SystemId id : all_system_ids()) {
    const CatalogEntry e = catalog_instantiate(id, default_params(id));
    if (!e.oval_chart) continue;
    CAPTURE(to_string(id));
    const OvalChart& ch = *e.oval_chart;
    CHECK(std::abs(ch.g(ch.tau1)) <= 1e-10);
    CHECK(std::abs(ch.g(ch.tau2)) <= 1e-10);
    CHECK((ch.point(ch.tau1, 1) - ch.point(ch.tau1, -1)).norm() <= 1e-10);
    double worst = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double t = ch.tau1 + (ch.tau2 - ch.tau1) * i / 1001.0;
      CHECK(ch.g(t) > 0.0);
      const double scale = std::max(1.0, e.curve.gradient(ch.point(t, 1)).norm());
      worst = std::max({worst, std::abs(e.curve.f(ch.point(t, 1))) / scale, std::abs(e.curve.f(ch.point(t, -1))) / scale});
    }
    CHECK(worst <= 1e-12);
    // chart orientation agrees with the integrated orbit
    const auto tr = alc::flow::integrate_flow(e.system, e.seed,
                                              alc::flow::find_periodic_orbit(e.system, e.seed).period);
    CHECK(ch.orientation == tr.orientation);
    if (id != SystemId::nalc) CHECK(ch.orientation == Orientation::clockwise);
  }
}

TEST_CASE("chlls endpoint vector field") {
  for (const Rational& a : {dec(1, 8), dec(3, 16), dec(1, 50)}) {
    const CatalogEntry e = catalog_instantiate(SystemId::chlls, {{"a", a}});
    const double av = alc::algebra::to_double(a);
    const Vec2 p = e.oval_chart->point(e.oval_chart->tau1, 1);
    const Vec2 F = e.system.field(p);
    CHECK(std::abs(F.x()) <= 1e-10);
    CHECK(std::abs(F.y() - 6.0 * std::sqrt(1.0 - 4.0 * av)) <= 1e-10);
  }
}

TEST_CASE("positivity grids and stability verdicts") {
  for (const Rational& a : chlls_grid()) {
    const HyperbolicityResult r = reduced_hyperbolicity_integral(catalog_instantiate(SystemId::chlls, {{"a", a}}));
    CHECK(r.D > 0.0);
    CHECK(r.w == -3.0);
    CHECK(stability_from_D(r.D) == Stability::unstable);
  }
  for (const Rational& c : fil_grid()) {
    const HyperbolicityResult r =
        reduced_hyperbolicity_integral(catalog_instantiate(SystemId::fil_transformed, {{"c", c}}));
    CHECK(r.D > 0.0);
    CHECK(*r.D_original == r.D);
  }
  for (const Rational& a : ch1_grid()) {
    CAPTURE(alc::algebra::to_string(a));
    const CatalogEntry e = catalog_instantiate(SystemId::ch1_transformed, {{"a", a}});
    const HyperbolicityResult r = reduced_hyperbolicity_integral(e);
    CHECK(r.D > 0.0);
    CHECK(*r.D_original == -r.D);
    CHECK(stability_from_D(*r.D_original) == *e.original_stability);
    const HyperbolicityResult o = reduced_hyperbolicity_integral(catalog_instantiate(SystemId::chavarriga, {{"a", a}}));
    CHECK(o.D == doctest::Approx(-r.D).epsilon(1e-14));
  }
}

TEST_CASE("cross-method agreement on the grids") {
  auto check_rows = [](SystemId id, const std::vector<Rational>& grid) {
    for (const SweepRow& row : sweep(id, grid, 1e-5)) {
      CAPTURE(to_string(id));
      CAPTURE(row.param);
      CHECK(row.agree);
      CHECK(std::abs(row.reduced.D - row.raw.D) <= 1e-9 * std::abs(row.reduced.D));
    }
  };
  check_rows(SystemId::chlls, chlls_grid());
  check_rows(SystemId::fil_transformed, fil_grid());
  check_rows(SystemId::ch1_transformed, ch1_grid());
}

TEST_CASE("raw integrals: identity and period") {
  const CatalogEntry e = catalog_instantiate(SystemId::chlls, {{"a", dec(1, 8)}});
  const auto div = [&](const Vec2& p) { return e.system.divergence(p); };
  const double D = raw_divergence_integral(e, div).value;
  const double K = raw_divergence_integral(e, [&](const Vec2& p) { return e.curve.k(p); }).value;
  CHECK(std::abs(D - K) <= 1e-5);
  const double T = raw_divergence_integral(e, [](const Vec2&) { return 1.0; }).value;
  const alc::flow::OrbitTrace orb = alc::flow::find_periodic_orbit(e.system, e.seed, 0.0, {}, &e.curve);
  CHECK(std::abs(T - orb.period) <= 1e-5);
  CHECK(std::abs(D - alc::flow::orbit_integrals(orb, e.curve).div) <= 1e-5);
  // the sine-substituted Gauss rule also handles the raw integrand
  CHECK(raw_divergence_integral(e, div, QuadratureSpec{}).value == doctest::Approx(D).epsilon(1e-12));

  const CatalogEntry o = catalog_instantiate(SystemId::filipstov, default_params(SystemId::filipstov));
  CHECK_THROWS_AS(raw_divergence_integral(o, div), alc::PreconditionError);
}

TEST_CASE("closed forms") {
  const CatalogEntry e = catalog_instantiate(SystemId::chlls, {{"a", dec(3, 16)}});
  const double red = reduced_hyperbolicity_integral(e).D;
  CHECK(closed_form_hyperbolicity(e).D == doctest::Approx(red).epsilon(1e-8));
  CHECK(red == doctest::Approx(ode_hyperbolicity(e).D).epsilon(1e-6));

  for (const ParamMap& pm : std::vector<ParamMap>{{{"a", dec(1, 2)}, {"b", dec(1, 4)}, {"c", -1}},
                                                  {{"a", 1}, {"b", 0}, {"c", 2}},
                                                  {{"a", dec(-1, 3)}, {"b", dec(1, 2)}, {"c", dec(3, 2)}}}) {
    const CatalogEntry c = catalog_instantiate(SystemId::chin2, pm);
    const double cf = closed_form_hyperbolicity(c).D;
    CHECK(hyperbolicity(c, Method::raw_quadrature).D == doctest::Approx(cf).epsilon(1e-10));
    CHECK(hyperbolicity(c, Method::ode).D == doctest::Approx(cf).epsilon(1e-8));
    CHECK(stability_from_D(cf) == c.expected_stability);
  }
  CHECK_THROWS_AS(chin_closed_form(1.0, 1.0, 1.0), alc::DomainError);
  CHECK_THROWS_AS(closed_form_hyperbolicity(catalog_instantiate(SystemId::nalc, {{"n", 0}})), alc::PreconditionError);
}

TEST_CASE("near the chlls boundary D tends to zero") {
  const CatalogEntry e = catalog_instantiate(SystemId::chlls, {{"a", dec(2499, 10000)}});
  CHECK(e.near_boundary);
  const double D = reduced_hyperbolicity_integral(e).D;
  CHECK(D > 0.0);
  CHECK(D < 1e-3);
  CHECK(D == doctest::Approx(alc::elliptic::D_closed_form(0.2499)).epsilon(1e-8));
}

TEST_CASE("method names and sweep csv") {
  CHECK(parse_method("reduced") == Method::reduced_quadrature);
  CHECK(parse_method("closed_form") == Method::closed_form);
  CHECK_THROWS_AS(parse_method("simpson"), alc::DomainError);
  std::ostringstream os;
  write_sweep_csv(os, sweep(SystemId::chlls, {dec(1, 8), dec(1, 5)}));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "param,D_reduced,D_raw,D_ode,err_reduced,err_raw,err_ode,agree");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "true");
  }
  CHECK(rows == 2);
  CHECK_THROWS_AS(sweep(SystemId::chin2, {dec(1, 2)}), alc::PreconditionError);
}
