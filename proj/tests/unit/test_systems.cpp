#include <cmath>
#include <random>

#include "alc/errors.hpp"
#include "alc/systems/catalog.hpp"
#include "doctest.h"

using namespace alc::systems;
using alc::algebra::BiPoly;
using alc::algebra::Rational;

namespace {

BiPoly exact_residual(const FamilyPolys& fp) {
  const auto& v = fp.f.vars();
  return fp.P * fp.f.partial(v[0]) + fp.Q * fp.f.partial(v[1]) - fp.k * fp.f;
}

std::vector<Vec2> oval_points(const CatalogEntry& e, int n) {
  const auto& ch = *e.oval_chart;
  std::vector<Vec2> pts;
  for (int i = 1; i <= n; ++i) {
    const double t = ch.tau1 + (ch.tau2 - ch.tau1) * i / (n + 1.0);
    pts.push_back(ch.point(t, 1));
    pts.push_back(ch.point(t, -1));
  }
  return pts;
}

std::vector<Vec2> samples_near(const std::vector<Vec2>& base, double spread, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  std::uniform_int_distribution<std::size_t> pick(0, base.size() - 1);
  std::vector<Vec2> out;
  for (int i = 0; i < n; ++i) out.push_back(base[pick(rng)] + Vec2(u(rng), u(rng)));
  return out;
}

}  // namespace

TEST_CASE("symbolic families satisfy the cofactor identity exactly") {
  for (SystemId id : {SystemId::chlls, SystemId::filipstov, SystemId::chavarriga, SystemId::fil_transformed,
                      SystemId::ch1_transformed}) {
    CAPTURE(to_string(id));
    CHECK(exact_residual(symbolic_family(id)).is_zero());
  }
  CHECK_THROWS_AS(symbolic_family(SystemId::chin2), alc::PreconditionError);
}

TEST_CASE("instantiated families have zero cofactor residual") {
  const std::map<SystemId, std::vector<ParamMap>> cases = {
      {SystemId::chlls, {{{"a", Rational(1, 8)}}, {{"a", Rational(1, 100)}}, {{"a", Rational(1, 5)}},
                         {{"a", Rational(3, 16)}}, {{"a", Rational(2, 9)}}}},
      {SystemId::filipstov, {{{"a", Rational(1, 10)}}, {{"a", Rational(1, 5)}}, {{"a", Rational(1, 50)}},
                             {{"a", Rational(3, 20)}}, {{"a", Rational(2, 13)}}}},
      {SystemId::chavarriga, {{{"a", Rational(-1, 50)}}, {{"a", Rational(-1, 100)}}, {{"a", Rational(-1, 40)}},
                              {{"a", Rational(-3, 1000)}}, {{"a", Rational(-7, 300)}}}},
      {SystemId::fil_transformed, {{{"c", Rational(3, 10)}}, {{"c", Rational(1, 4)}}, {{"c", Rational(1, 10)}},
                                   {{"c", Rational(2, 5)}}, {{"c", Rational(4, 3) / 3}}}},
      {SystemId::ch1_transformed, {{{"a", Rational(-1, 50)}}, {{"a", Rational(-1, 100)}}, {{"a", Rational(-1, 40)}},
                                   {{"a", Rational(-3, 1000)}}, {{"a", Rational(-7, 300)}}}},
      {SystemId::chin2, {{{"a", Rational(1, 2)}, {"b", Rational(1, 4)}, {"c", -1}},
                         {{"a", 1}, {"b", 0}, {"c", 2}},
                         {{"a", Rational(-1, 3)}, {"b", Rational(1, 2)}, {"c", Rational(3, 2)}},
                         {{"a", 2}, {"b", -1}, {"c", 3}},
                         {{"a", Rational(1, 7)}, {"b", Rational(2, 7)}, {"c", Rational(-5, 7)}}}},
      {SystemId::yablonskii, {{{"a", 1}, {"b", 2}, {"c", Rational(1, 2)}},
                              {{"a", 2}, {"b", 1}, {"c", Rational(-1, 2)}},
                              {{"a", -1}, {"b", -2}, {"c", Rational(1, 3)}},
                              {{"a", 1}, {"b", Rational(3, 2)}, {"c", Rational(1, 10)}},
                              {{"a", 3}, {"b", 5}, {"c", Rational(1, 5)}}}},
  };
  for (const auto& [id, list] : cases) {
    for (const ParamMap& pm : list) {
      CAPTURE(to_string(id));
      const CatalogEntry e = catalog_instantiate(id, pm);
      CHECK(cofactor_residual(e.system, e.curve).is_zero());
      CHECK(pointwise_residual(e.system, e.curve, oval_points(e, 20)) < 1e-9);
    }
  }
}

TEST_CASE("transcendental system: pointwise residual on the oval") {
  for (int n : {0, 1, -2}) {
    const CatalogEntry e = catalog_instantiate(SystemId::nalc, {{"n", n}});
    CHECK(e.system.transcendental());
    CHECK_FALSE(e.polys.has_value());
    const auto pts = oval_points(e, 50);
    CHECK(pointwise_residual(e.system, e.curve, pts) < 1e-12);
    CHECK(gradient_nonvanishing_check(e.curve, pts) > 0.1);
    CHECK_THROWS_AS(cofactor_residual(e.system, e.curve), alc::PreconditionError);
    // off-curve points still satisfy the identity
    CHECK(pointwise_residual(e.system, e.curve, samples_near(pts, 2.0, 50, 7)) < 1e-11);
  }
  CHECK(catalog_instantiate(SystemId::nalc, {{"n", 0}}).expected_stability == Stability::stable);
  CHECK(catalog_instantiate(SystemId::nalc, {{"n", 3}}).expected_stability == Stability::center_band);
}

TEST_CASE("divergence examples") {
  const CatalogEntry e = catalog_instantiate(SystemId::chlls, {{"a", Rational(1, 8)}});
  const BiPoly div = *divergence(e.system).poly();
  CHECK(div == alc::algebra::parse_bipoly("2*(2 - 5/8*x - 2*y)"));
  const BiPoly sym = divergence(symbolic_family(SystemId::chlls).P, symbolic_family(SystemId::chlls).Q);
  CHECK(sym == alc::algebra::parse_bipoly("4 - 10*a*x - 4*y", {"x", "y"}, alc::algebra::make_context("a")));
  const CatalogEntry n = catalog_instantiate(SystemId::nalc, {{"n", 0}});
  const ScalarField nd = divergence(n.system);
  const Vec2 p(0.3, -0.7);
  CHECK(nd(p) == doctest::Approx(n.system.jacobian(p).trace()).epsilon(1e-15));
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(catalog_instantiate(SystemId::chlls, {{"a", Rational(1, 4)}}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::chlls, {{"a", 0}}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::filipstov, {{"a", Rational(3, 13)}}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::chavarriga, {{"a", Rational(-3, 100)}}), alc::DomainError);
  CHECK_NOTHROW(catalog_instantiate(SystemId::chavarriga, {{"a", Rational(-283, 10000)}}));
  CHECK_THROWS_AS(catalog_instantiate(SystemId::chavarriga, {{"a", Rational(-284, 10000)}}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::fil_transformed, {{"c", Rational(1, 2)}}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::nalc, {{"n", Rational(1, 2)}}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::chin2, {{"a", 0}, {"b", 0}, {"c", 2}}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::chin2, {{"a", 1}, {"b", 1}, {"c", 1}}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::yablonskii, {{"a", 1}, {"b", 2}, {"c", 2}}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::yablonskii, {{"a", 1}, {"b", -2}, {"c", 0}}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::chlls, {}), alc::DomainError);
  CHECK_THROWS_AS(catalog_instantiate(SystemId::chlls, {{"a", Rational(1, 8)}, {"z", 1}}), alc::DomainError);
  CHECK_THROWS_AS(parse_system_id("nope"), alc::DomainError);
  CHECK(parse_system_id("fil") == SystemId::fil_transformed);
  CHECK(parse_system_id("ch1") == SystemId::ch1_transformed);

  CHECK(catalog_instantiate(SystemId::chlls, {{"a", Rational(2499, 10000)}}).near_boundary);
  CHECK_FALSE(catalog_instantiate(SystemId::chlls, {{"a", Rational(1, 8)}}).near_boundary);
}

TEST_CASE("every catalog entry: seed on the curve, nonvanishing gradient") {
  for (SystemId id : all_system_ids()) {
    CAPTURE(to_string(id));
    const CatalogEntry e = catalog_instantiate(id, default_params(id));
    const double scale = std::max(1.0, e.seed.norm());
    CHECK(std::abs(e.curve.f(e.seed)) < 1e-9 * std::pow(scale, 4));
    CHECK(e.curve.gradient(e.seed).norm() > 1e-6);
    if (e.oval_chart) {
      const auto pts = oval_points(e, 40);
      CHECK(gradient_nonvanishing_check(e.curve, pts, 1e-8) > 1e-6);
      CHECK(e.oval_chart->tau1 < e.oval_chart->tau2);
      CHECK(e.oval_chart->g(0.5 * (e.oval_chart->tau1 + e.oval_chart->tau2)) > 0.0);
    }
  }
  const CatalogEntry e = catalog_instantiate(SystemId::chlls, {{"a", Rational(1, 8)}});
  CHECK_THROWS_AS(gradient_nonvanishing_check(e.curve, {Vec2(10.0, 10.0)}), alc::PreconditionError);
}

TEST_CASE("ch1 turning points") {
  const CatalogEntry e = catalog_instantiate(SystemId::ch1_transformed, {{"a", Rational(-1, 50)}});
  CHECK(e.oval_chart->tau1 == doctest::Approx(-8.8286910246957).epsilon(1e-12));
  CHECK(e.oval_chart->tau2 == doctest::Approx(-1.9423953589008).epsilon(1e-12));
}

TEST_CASE("birational maps: divergence transformation, round trip, jacobians") {
  struct Case {
    SystemId transformed;
    SystemId original;
    ParamMap tparams;
    ParamMap oparams;
  };
  const Rational c(3, 10);
  const std::vector<Case> cases = {
      {SystemId::fil_transformed, SystemId::filipstov, {{"c", c}}, {{"a", 3 * c / (4 + 5 * c)}}},
      {SystemId::ch1_transformed, SystemId::chavarriga, {{"a", Rational(-1, 50)}}, {{"a", Rational(-1, 50)}}},
  };
  for (const Case& k : cases) {
    CAPTURE(to_string(k.transformed));
    const CatalogEntry t = catalog_instantiate(k.transformed, k.tparams);
    const CatalogEntry o = catalog_instantiate(k.original, k.oparams);
    REQUIRE(t.map.has_value());
    const BirationalMap& m = *t.map;
    const auto samples = samples_near(oval_points(t, 25), 0.05, 50, 11);
    const PlanarSystem pulled = divide_by_time_factor(t.system, m.time_factor);
    CHECK(transform_divergence_check(m, o.system, pulled, samples) < 1e-8);
    CHECK(round_trip_error(m, samples) < 1e-12);
    for (const Vec2& s : samples) {
      CHECK(m.jacobian(s) * m.inverse_jacobian(m.forward(s)) == doctest::Approx(1.0).epsilon(1e-10));
      // pulled-back field equals the original field pushed through the inverse map
      const Vec2 pushed = m.forward_jacobian(s) * pulled.field(s);
      const Vec2 orig = o.system.field(m.forward(s));
      CHECK((pushed - orig).norm() < 1e-9 * std::max(1.0, orig.norm()));
    }
    // the original seed is on the original curve
    CHECK(std::abs(o.curve.f(o.seed)) < 1e-8);
  }
}

TEST_CASE("transform check rejects singular samples") {
  const BirationalMap m = chavarriga_map(-0.02);
  const PlanarSystem sys = catalog_instantiate(SystemId::chavarriga, {{"a", Rational(-1, 50)}}).system;
  // forward is singular where u + 1 + v + 2 a u^2 = 0; J -> infinity there, so test on J ~ 0 via huge D
  CHECK_THROWS_AS(transform_divergence_check(m, sys, sys, {Vec2(0.0, 1e9)}), alc::SingularSampleError);
}
