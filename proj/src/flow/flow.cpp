#include "alc/flow/flow.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "alc/errors.hpp"

namespace alc::flow {

namespace {

// Integrates y' = rhs from t = 0 to t_end, calling on_step after each accepted step.
template <class OnStep>
State run(const Dopri5::Rhs& rhs, const State& y0, double t_end, const FlowOptions& opts, OnStep&& on_step) {
  Dopri5 solver(rhs, opts.ode());
  solver.reset(0.0, y0);
  while (solver.t() < t_end) {
    solver.step(t_end);
    on_step(solver);
  }
  return solver.y();
}

Dopri5::Rhs plane_rhs(const PlanarSystem& system) {
  return [&system](double, const State& y, State& dy) {
    const Vec2 f = system.field(Vec2(y[0], y[1]));
    dy[0] = f.x();
    dy[1] = f.y();
  };
}

double shoelace(const std::vector<OrbitSample>& s) {
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) area += s[i].x * s[i + 1].y - s[i + 1].x * s[i].y;
  if (!s.empty()) area += s.back().x * s.front().y - s.front().x * s.back().y;
  return 0.5 * area;
}

Vec2 rotate(const Vec2& v) { return {-v.y(), v.x()}; }

struct Section {
  Vec2 anchor, dir, normal;
  double half_width;

  double g(const Vec2& q) const { return (q - anchor).dot(normal); }
  double s(const Vec2& q) const { return (q - anchor).dot(dir) / dir.squaredNorm(); }
  Vec2 point(double s) const { return anchor + s * dir; }
};

Section make_section(const PlanarSystem& system, const SectionSpec& spec) {
  if (!(spec.direction.norm() > 0.0)) throw PreconditionError("section direction is null");
  const Vec2 f0 = system.field(spec.anchor);
  if (!(f0.norm() > 0.0)) throw PreconditionError("section anchor is a singular point");
  Vec2 n = rotate(spec.direction);
  const double tr = n.dot(f0);
  if (std::abs(tr) <= 1e-12 * n.norm() * f0.norm()) throw PreconditionError("section is tangent to the flow");
  if (tr < 0) n = -n;
  return {spec.anchor, spec.direction, n, spec.half_width};
}

// Time in [seg.t0, seg.t0 + h] where g crosses zero upward; bracket given by the step ends.
double locate_crossing(const PlanarSystem& system, const Section& sec, const DenseSegment& seg) {
  auto pos = [&](double t) { return Vec2(seg.component(t, 0), seg.component(t, 1)); };
  double lo = seg.t0, hi = seg.t0 + seg.h;
  double glo = sec.g(pos(lo)), ghi = sec.g(pos(hi));
  double t = ghi > glo ? lo - glo * (hi - lo) / (ghi - glo) : 0.5 * (lo + hi);
  const double ttol = std::max(1e-13, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi));
  for (int it = 0; it < 200; ++it) {
    const Vec2 q = pos(t);
    const double gv = sec.g(q);
    if (gv == 0.0) return t;
    if (gv < 0.0)
      lo = t;
    else
      hi = t;
    if (hi - lo <= ttol) break;
    const double dg = sec.normal.dot(system.field(q));
    double tn = dg != 0.0 ? t - gv / dg : 0.5 * (lo + hi);
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    if (std::abs(tn - t) <= ttol) {
      t = tn;
      break;
    }
    t = tn;
  }
  return t;
}

struct Return {
  double time;
  Vec2 point;
  double s;
};

Return first_return(const PlanarSystem& system, const Section& sec, const Vec2& start, const FlowOptions& opts) {
  Dopri5 solver(plane_rhs(system), opts.ode());
  State y0(2);
  y0 << start.x(), start.y();
  solver.reset(0.0, y0);
  bool armed = false;
  double g_prev = 0.0;
  while (solver.t() < opts.max_return_time) {
    solver.step(opts.max_return_time);
    const double g_new = sec.g(Vec2(solver.y()[0], solver.y()[1]));
    if (armed && g_prev < 0.0 && g_new >= 0.0) {
      const DenseSegment& seg = solver.last_segment();
      const double tc = locate_crossing(system, sec, seg);
      const Vec2 q(seg.component(tc, 0), seg.component(tc, 1));
      const double s = sec.s(q);
      if (std::abs(s) <= sec.half_width) return {tc, q, s};
    }
    if (g_new < 0.0) armed = true;
    g_prev = g_new;
  }
  std::ostringstream msg;
  msg << "no return to the section within t = " << opts.max_return_time << " from (" << start.x() << ", "
      << start.y() << ")";
  throw NoOrbitError(msg.str());
}

double drift_scale(const InvariantCurve& curve, const Vec2& p0) {
  return std::max(1.0, curve.gradient(p0).norm() * std::max(1.0, p0.norm()));
}

}  // namespace

Vec2 OrbitTrace::at(double t) const {
  if (segments.empty()) return p0;
  std::size_t lo = 0, hi = segments.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (segments[mid].t0 <= t)
      lo = mid;
    else
      hi = mid;
  }
  const DenseSegment& seg = segments[lo];
  return {seg.component(t, 0), seg.component(t, 1)};
}

SectionSpec SectionSpec::across_flow(const PlanarSystem& system, const Vec2& p0, double half_width) {
  const Vec2 f = system.field(p0);
  if (!(f.norm() > 0.0)) throw PreconditionError("section anchor is a singular point");
  return {p0, rotate(f).normalized(), half_width};
}

SectionSpec SectionSpec::along_gradient(const InvariantCurve& curve, const Vec2& p0, double half_width) {
  const Vec2 g = curve.gradient(p0);
  if (!(g.norm() > 0.0)) throw PreconditionError("gradient of f vanishes at the section anchor");
  return {p0, g.normalized(), half_width};
}

OrbitTrace integrate_flow(const PlanarSystem& system, const Vec2& p0, double t_end, const FlowOptions& opts,
                          const InvariantCurve* curve) {
  if (!(t_end > 0.0)) throw PreconditionError("t_end must be positive");
  if (!(opts.rtol > 0.0 && opts.atol > 0.0)) throw PreconditionError("tolerances must be positive");
  OrbitTrace tr;
  tr.system = system;
  tr.p0 = p0;
  tr.samples.push_back({0.0, p0.x(), p0.y()});
  State y0(2);
  y0 << p0.x(), p0.y();
  const State y = run(plane_rhs(system), y0, t_end, opts, [&](const Dopri5& s) {
    tr.samples.push_back({s.t(), s.y()[0], s.y()[1]});
    tr.segments.push_back(s.last_segment());
  });
  tr.period = t_end;
  tr.closure = (Vec2(y[0], y[1]) - p0).norm();
  tr.orientation = shoelace(tr.samples) < 0 ? Orientation::clockwise : Orientation::counterclockwise;
  if (curve) {
    double drift = 0.0;
    for (const auto& s : tr.samples) drift = std::max(drift, std::abs(curve->f(Vec2(s.x, s.y))));
    tr.f_drift = drift;
  }
  return tr;
}

OrbitTrace integrate_flow(const PlanarSystem& system, const Vec2& p0, double t_end, double tol) {
  FlowOptions o;
  o.rtol = tol;
  o.atol = tol * 1e-2;
  return integrate_flow(system, p0, t_end, o);
}

OrbitTrace find_periodic_orbit(const PlanarSystem& system, const SectionSpec& spec, double tol,
                               const FlowOptions& opts, const InvariantCurve* curve) {
  const Section sec = make_section(system, spec);
  const double scale = std::max(1.0, spec.anchor.norm());
  if (!(tol > 0.0)) tol = 1e-10 * scale;
  auto displacement = [&](double s, Return& r) {
    r = first_return(system, sec, sec.point(s), opts);
    return r.s - s;
  };

  Return r;
  double s0 = 0.0;
  double d0 = displacement(s0, r);
  double s_best = s0, d_best = d0;
  Return r_best = r;
  if (std::abs(d0) > tol) {
    double s1 = s0 + d0;
    double d1 = displacement(s1, r);
    if (std::abs(d1) < std::abs(d_best)) s_best = s1, d_best = d1, r_best = r;
    for (int it = 0; it < 60 && std::abs(d_best) > tol; ++it) {
      if (d1 == d0) break;
      const double s2 = s1 - d1 * (s1 - s0) / (d1 - d0);
      if (!std::isfinite(s2) || std::abs(s2) > 0.5 * std::min(sec.half_width, 1e3 * scale))
        throw ConvergenceError("return-map iteration left the section window");
      s0 = s1, d0 = d1;
      s1 = s2;
      d1 = displacement(s1, r);
      if (std::abs(d1) < std::abs(d_best)) s_best = s1, d_best = d1, r_best = r;
      if (std::abs(s1 - s0) <= 1e-15 * scale) break;
    }
    if (std::abs(d_best) > tol) {
      std::ostringstream msg;
      msg << "return-map iteration did not converge: |d| = " << std::abs(d_best) << " > " << tol;
      throw ConvergenceError(msg.str());
    }
  }
  const Vec2 p_star = sec.point(s_best);
  OrbitTrace tr = integrate_flow(system, p_star, r_best.time, opts, curve);
  tr.closed = true;
  tr.displacement = std::abs(d_best);
  return tr;
}

OrbitTrace find_periodic_orbit(const PlanarSystem& system, const Vec2& guess, double tol, const FlowOptions& opts,
                               const InvariantCurve* curve) {
  return find_periodic_orbit(system, SectionSpec::across_flow(system, guess), tol, opts, curve);
}

double orbit_integral(const OrbitTrace& orbit, const Evaluable& g, const FlowOptions& opts) {
  const PlanarSystem& sys = orbit.system;
  auto rhs = [&](double, const State& y, State& dy) {
    const Vec2 p(y[0], y[1]);
    const Vec2 f = sys.field(p);
    dy[0] = f.x();
    dy[1] = f.y();
    dy[2] = g(p);
  };
  State y0(3);
  y0 << orbit.p0.x(), orbit.p0.y(), 0.0;
  return run(rhs, y0, orbit.period, opts, [](const Dopri5&) {})[2];
}

OrbitIntegrals orbit_integrals(const OrbitTrace& orbit, const InvariantCurve& curve, const FlowOptions& opts) {
  const PlanarSystem& sys = orbit.system;
  auto rhs = [&](double, const State& y, State& dy) {
    const Vec2 p(y[0], y[1]);
    const Vec2 f = sys.field(p);
    dy[0] = f.x();
    dy[1] = f.y();
    dy[2] = sys.divergence(p);
    dy[3] = curve.k(p);
  };
  State y0(4);
  y0 << orbit.p0.x(), orbit.p0.y(), 0.0, 0.0;
  const State y = run(rhs, y0, orbit.period, opts, [](const Dopri5&) {});
  return {y[2], y[3]};
}

double theorem_residual(const PlanarSystem& system, const InvariantCurve& curve, const OrbitTrace& orbit,
                        double drift_tol, const FlowOptions& opts) {
  // |f| / |grad f| estimates the distance to the curve, judged against the size of the point
  double drift = 0.0, worst = 0.0;
  for (const auto& s : orbit.samples) {
    const Vec2 q(s.x, s.y);
    const double fq = std::abs(curve.f(q));
    drift = std::max(drift, fq);
    worst = std::max(worst, fq / drift_scale(curve, q));
  }
  if (worst > drift_tol) {
    std::ostringstream msg;
    msg << "orbit is not on the invariant curve: max |f| = " << drift << ", relative " << worst;
    throw PreconditionError(msg.str());
  }
  OrbitTrace tr = orbit;
  tr.system = system;
  const OrbitIntegrals I = orbit_integrals(tr, curve, opts);
  return std::abs(I.div - I.k);
}

double Monodromy::liouville_residual() const {
  const double e = std::exp(I_div);
  return std::abs(M.determinant() - e) / e;
}

double Monodromy::flow_direction_residual() const { return (M * F0 - F0).norm() / F0.norm(); }

double Monodromy::left_eigen_residual(const Vec2& grad_f) const {
  const Vec2 lhs = M.transpose() * grad_f;
  return (lhs - std::exp(I_k) * grad_f).norm() / grad_f.norm();
}

Monodromy monodromy_matrix(const PlanarSystem& system, const OrbitTrace& orbit, const InvariantCurve* curve,
                           const FlowOptions& opts) {
  auto rhs = [&](double, const State& y, State& dy) {
    const Vec2 p(y[0], y[1]);
    const Vec2 f = system.field(p);
    const Mat2 J = system.jacobian(p);
    dy[0] = f.x();
    dy[1] = f.y();
    dy[2] = J.trace();
    dy[3] = curve ? curve->k(p) : 0.0;
    Eigen::Map<const Mat2> M(y.data() + 4);
    Eigen::Map<Mat2> dM(dy.data() + 4);
    dM.noalias() = J * M;
  };
  State y0(8);
  y0 << orbit.p0.x(), orbit.p0.y(), 0.0, 0.0, 1.0, 0.0, 0.0, 1.0;
  const State y = run(rhs, y0, orbit.period, opts, [](const Dopri5&) {});
  Monodromy m;
  m.M = Eigen::Map<const Mat2>(y.data() + 4);
  m.p0 = orbit.p0;
  m.F0 = system.field(orbit.p0);
  m.period = orbit.period;
  m.I_div = y[2];
  if (curve) m.I_k = y[3];
  return m;
}

double exponential_propagation_residual(const PlanarSystem& system, const InvariantCurve& curve, const Vec2& q,
                                        double t_end, const FlowOptions& opts) {
  const double fq = curve.f(q);
  if (fq == 0.0) throw PreconditionError("start point lies on f = 0");
  auto rhs = [&](double, const State& y, State& dy) {
    const Vec2 p(y[0], y[1]);
    const Vec2 f = system.field(p);
    dy[0] = f.x();
    dy[1] = f.y();
    dy[2] = curve.k(p);
  };
  State y0(3);
  y0 << q.x(), q.y(), 0.0;
  double worst = 0.0;
  run(rhs, y0, t_end, opts, [&](const Dopri5& s) {
    const double e = std::exp(s.y()[2]);
    const double r = std::abs(curve.f(Vec2(s.y()[0], s.y()[1])) - fq * e) / (std::abs(fq) * e);
    worst = std::max(worst, r);
  });
  return worst;
}

void write_orbit_csv(std::ostream& os, const OrbitTrace& orbit, const InvariantCurve* curve,
                     const FlowOptions& opts) {
  const PlanarSystem& sys = orbit.system;
  auto rhs = [&](double, const State& y, State& dy) {
    const Vec2 p(y[0], y[1]);
    const Vec2 f = sys.field(p);
    dy[0] = f.x();
    dy[1] = f.y();
    dy[2] = sys.divergence(p);
    dy[3] = curve ? curve->k(p) : 0.0;
  };
  const auto old = os.precision(17);
  os << "t,x,y,f,int_div,int_k\n";
  auto line = [&](double t, const State& y) {
    os << t << ',' << y[0] << ',' << y[1] << ',';
    if (curve) os << curve->f(Vec2(y[0], y[1]));
    os << ',' << y[2] << ',';
    if (curve) os << y[3];
    os << '\n';
  };
  State y0(4);
  y0 << orbit.p0.x(), orbit.p0.y(), 0.0, 0.0;
  line(0.0, y0);
  run(rhs, y0, orbit.period, opts, [&](const Dopri5& s) { line(s.t(), s.y()); });
  os.precision(old);
}

}  // namespace alc::flow
