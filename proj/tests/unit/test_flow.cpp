#include <cmath>
#include <numbers>
#include <sstream>

#include "alc/errors.hpp"
#include "alc/flow/flow.hpp"
#include "alc/systems/catalog.hpp"
#include "doctest.h"

using namespace alc::flow;
using namespace alc::systems;
using alc::algebra::Rational;

namespace {

constexpr double pi = std::numbers::pi;

PlanarSystem rotation() {
  return PlanarSystem(ScalarField::closed_form([](const Vec2& p) { return -p.y(); },
                                              [](const Vec2&) { return Vec2(0.0, -1.0); }),
                      ScalarField::closed_form([](const Vec2& p) { return p.x(); },
                                               [](const Vec2&) { return Vec2(1.0, 0.0); }));
}

}  // namespace

TEST_CASE("harmonic rotation") {
  const PlanarSystem rot = rotation();
  const OrbitTrace tr = integrate_flow(rot, Vec2(1.0, 0.0), 2 * pi, 1e-11);
  CHECK(tr.closure < 1e-9);
  CHECK(tr.orientation == Orientation::counterclockwise);
  CHECK((tr.at(pi / 2) - Vec2(0.0, 1.0)).norm() < 1e-9);

  const OrbitTrace orb = find_periodic_orbit(rot, Vec2(1.0, 0.0));
  CHECK(orb.period == doctest::Approx(2 * pi).epsilon(1e-11));
  CHECK(orbit_integral(orb, [](const Vec2&) { return 1.0; }) == doctest::Approx(orb.period).epsilon(1e-12));
  const Monodromy m = monodromy_matrix(rot, orb);
  CHECK((m.M - Mat2::Identity()).norm() < 1e-9);
  CHECK(m.I_div == doctest::Approx(0.0));
  CHECK(std::isnan(m.I_k));
}

TEST_CASE("transcendental system: divergence integrals over the two kinds of ovals") {
  const CatalogEntry g0 = catalog_instantiate(SystemId::nalc, {{"n", 0}});
  const OrbitTrace o0 = find_periodic_orbit(g0.system, Vec2(0.0, 1.0), 0.0, {}, &g0.curve);
  CHECK(o0.displacement <= 1e-10);
  CHECK(o0.f_drift <= 1e-9);
  const auto div0 = [&](const Vec2& p) { return g0.system.divergence(p); };
  CHECK(orbit_integral(o0, div0) == doctest::Approx(-4 * pi).epsilon(1e-7));
  CHECK(theorem_residual(g0.system, g0.curve, o0) <= 1e-6);
  const OrbitIntegrals I0 = orbit_integrals(o0, g0.curve);
  CHECK(I0.k == doctest::Approx(-4 * pi).epsilon(1e-7));

  const CatalogEntry g1 = catalog_instantiate(SystemId::nalc, {{"n", 1}});
  const OrbitTrace o1 = find_periodic_orbit(g1.system, g1.seed, 0.0, {}, &g1.curve);
  CHECK(std::abs(g1.seed.x() - 2 * pi) < 1e-12);
  const OrbitIntegrals I1 = orbit_integrals(o1, g1.curve);
  CHECK(std::abs(I1.div) <= 1e-6);
  CHECK(std::abs(I1.k) <= 1e-6);
  CHECK(theorem_residual(g1.system, g1.curve, o1) <= 1e-6);
}

TEST_CASE("flow stays on the invariant curve") {
  const CatalogEntry e = catalog_instantiate(SystemId::nalc, {{"n", 0}});
  const OrbitTrace tr = integrate_flow(e.system, Vec2(0.0, 1.0), 7.0, FlowOptions{}, &e.curve);
  CHECK(tr.f_drift <= 1e-9);

  const CatalogEntry c = catalog_instantiate(SystemId::chlls, {{"a", Rational(3, 16)}});
  const Vec2 p(4.0 / 3.0, -1.0 / (2.0 * 4.0 / 3.0));
  CHECK(std::abs(c.curve.f(p)) < 1e-15);
  const OrbitTrace tc = integrate_flow(c.system, p, 5.0, FlowOptions{}, &c.curve);
  CHECK(tc.f_drift <= 1e-9);
}

TEST_CASE("chlls orbit: closure, identity, monodromy, orientation") {
  const CatalogEntry e = catalog_instantiate(SystemId::chlls, {{"a", Rational(1, 8)}});
  const OrbitTrace orb = find_periodic_orbit(e.system, e.seed, 0.0, {}, &e.curve);
  CHECK(orb.period > 0.0);
  CHECK(orb.closure <= 1e-9);
  CHECK(orb.orientation == Orientation::clockwise);
  CHECK(theorem_residual(e.system, e.curve, orb) <= 1e-6);
  const Monodromy m = monodromy_matrix(e.system, orb, &e.curve);
  CHECK(m.liouville_residual() <= 1e-6);
  CHECK(m.flow_direction_residual() <= 1e-5);
  CHECK(m.left_eigen_residual(e.curve.gradient(orb.p0)) <= 1e-5);
  CHECK(m.I_div > 0.0);

  // the gradient section finds the same cycle
  const OrbitTrace g = find_periodic_orbit(e.system, SectionSpec::along_gradient(e.curve, e.seed, 0.5), 0.0, {},
                                           &e.curve);
  CHECK(g.period == doctest::Approx(orb.period).epsilon(1e-9));
}

TEST_CASE("every catalog orbit: identity, monodromy and stability sign") {
  for (SystemId id : all_system_ids()) {
    CAPTURE(to_string(id));
    const CatalogEntry e = catalog_instantiate(id, default_params(id));
    const OrbitTrace orb = find_periodic_orbit(e.system, e.seed, 0.0, {}, &e.curve);
    CHECK(theorem_residual(e.system, e.curve, orb) <= 1e-6);
    const Monodromy m = monodromy_matrix(e.system, orb, &e.curve);
    CHECK(m.liouville_residual() <= 1e-6);
    CHECK(m.flow_direction_residual() <= 1e-5);
    CHECK(m.left_eigen_residual(e.curve.gradient(orb.p0)) <= 1e-5);
    switch (e.expected_stability) {
      case Stability::stable: CHECK(m.I_div < -1e-6); break;
      case Stability::unstable: CHECK(m.I_div > 1e-6); break;
      case Stability::center_band: CHECK(std::abs(m.I_div) < 1e-6); break;
      case Stability::hyperbolic: CHECK(std::abs(m.I_div) > 1e-6); break;
    }
  }
}

TEST_CASE("exponential propagation off the curve") {
  for (SystemId id : {SystemId::chlls, SystemId::nalc, SystemId::fil_transformed}) {
    CAPTURE(to_string(id));
    const CatalogEntry e = catalog_instantiate(id, default_params(id));
    const Vec2 q = e.seed + 0.01 * e.curve.gradient(e.seed).normalized();
    CHECK(exponential_propagation_residual(e.system, e.curve, q, 0.5) <= 1e-8);
  }
  const CatalogEntry e = catalog_instantiate(SystemId::nalc, {{"n", 0}});
  CHECK_THROWS_AS(exponential_propagation_residual(e.system, e.curve, Vec2(0.0, 1.0), 1.0), alc::PreconditionError);
}

TEST_CASE("error paths") {
  // x' = x^2 blows up at t = 1
  const PlanarSystem blow(ScalarField::closed_form([](const Vec2& p) { return p.x() * p.x(); },
                                                   [](const Vec2& p) { return Vec2(2 * p.x(), 0.0); }),
                          ScalarField::constant(0.0));
  try {
    integrate_flow(blow, Vec2(1.0, 0.0), 2.0);
    FAIL("expected an integration failure");
  } catch (const alc::IntegrationFailure& f) {
    CHECK(f.t() == doctest::Approx(1.0).epsilon(1e-3));
  }

  const PlanarSystem drift(ScalarField::constant(1.0), ScalarField::constant(0.0));
  FlowOptions quick;
  quick.max_return_time = 10.0;
  CHECK_THROWS_AS(find_periodic_orbit(drift, Vec2(0.0, 0.0), 0.0, quick), alc::NoOrbitError);
  CHECK_THROWS_AS(integrate_flow(drift, Vec2(0.0, 0.0), -1.0), alc::PreconditionError);

  const PlanarSystem rot = rotation();
  CHECK_THROWS_AS(find_periodic_orbit(rot, Vec2(0.0, 0.0)), alc::PreconditionError);

  // a trace that starts off the curve is rejected by the identity check
  const CatalogEntry e = catalog_instantiate(SystemId::chlls, {{"a", Rational(1, 8)}});
  const OrbitTrace off = integrate_flow(e.system, e.seed + Vec2(0.05, 0.0), 0.5);
  CHECK_THROWS_AS(theorem_residual(e.system, e.curve, off), alc::PreconditionError);
}

TEST_CASE("drift is judged relative to the local size of f") {
  // this orbit reaches |x| ~ 600 where the quartic f has |grad f| ~ 1e6
  const CatalogEntry e = catalog_instantiate(SystemId::filipstov, {{"a", Rational(1, 30)}});
  const OrbitTrace orb = find_periodic_orbit(e.system, e.seed, 0.0, {}, &e.curve);
  CHECK(orb.f_drift > 1e-3);
  CHECK(theorem_residual(e.system, e.curve, orb) <= 1e-6);
}

TEST_CASE("csv export") {
  const CatalogEntry e = catalog_instantiate(SystemId::chlls, {{"a", Rational(1, 8)}});
  const OrbitTrace orb = find_periodic_orbit(e.system, e.seed, 0.0, {}, &e.curve);
  std::ostringstream os;
  write_orbit_csv(os, orb, &e.curve);
  std::istringstream is(os.str());
  std::string line, last;
  std::getline(is, line);
  CHECK(line == "t,x,y,f,int_div,int_k");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows > 10);
  // final running integral is D
  const double d_last = std::stod(last.substr(0, last.rfind(',')).substr(last.substr(0, last.rfind(',')).rfind(',') + 1));
  CHECK(d_last == doctest::Approx(orbit_integrals(orb, e.curve).div).epsilon(1e-10));
}
