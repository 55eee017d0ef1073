#include "alc/cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "alc/elliptic/elliptic.hpp"
#include "alc/errors.hpp"
#include "alc/flow/flow.hpp"
#include "json.hpp"

namespace alc::cli {

using algebra::Rational;
using json = nlohmann::ordered_json;
using ovalquad::HyperbolicityResult;
using ovalquad::Method;
using systems::CatalogEntry;
using systems::ParamMap;
using systems::Stability;
using systems::SystemId;
using systems::Vec2;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Check {
  std::string name;
  double value;
  double tol;
  bool pass;
  std::string note;
};

/// Accumulates named values and pass/fail checks, rendered as text or JSON.
struct Report {
  explicit Report(std::string c) : command(std::move(c)) {}

  std::string command;
  json info = json::object();
  std::vector<Check> checks;

  void check(std::string name, double value, double tol, std::string note = {}) {
    const bool ok = std::isfinite(value) && value <= tol;
    checks.push_back({std::move(name), value, tol, ok, std::move(note)});
  }
  void flag(std::string name, bool ok, std::string note = {}) {
    checks.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok, std::move(note)});
  }
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  void write(std::ostream& os, Format format) const {
    if (format == Format::json) {
      json j;
      j["schema"] = 1;
      j["command"] = command;
      for (const auto& [k, v] : info.items()) j[k] = v;
      json arr = json::array();
      for (const Check& c : checks) {
        json e;
        e["name"] = c.name;
        e["value"] = num(c.value);
        e["tolerance"] = c.tol;
        e["pass"] = c.pass;
        if (!c.note.empty()) e["note"] = c.note;
        arr.push_back(e);
      }
      j["checks"] = arr;
      j["pass"] = pass();
      os << j.dump(2) << '\n';
      return;
    }
    os << "command: " << command << '\n';
    for (const auto& [k, v] : info.items()) {
      os << k << ": ";
      if (v.is_number_float()) os << fmt(v.get<double>());
      else if (v.is_string()) os << v.get<std::string>();
      else os << v.dump();
      os << '\n';
    }
    for (const Check& c : checks) {
      os << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << fmt(c.value) << "  tol=" << fmt(c.tol);
      if (!c.note.empty()) os << "  (" << c.note << ")";
      os << '\n';
    }
    os << "result: " << (pass() ? "PASS" : "FAIL") << '\n';
  }
};

/// Writes through --output when given, to out otherwise.
template <class F>
void emit(const RunConfig& cfg, std::ostream& out, F&& body) {
  if (cfg.output.empty()) {
    body(out);
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) throw DomainError("cannot open output file " + cfg.output);
  body(file);
}

SystemId require_system(const RunConfig& cfg) {
  if (!cfg.system) throw DomainError(cfg.command + ": --system is required");
  return *cfg.system;
}

ParamMap effective_params(SystemId id, const ParamMap& given) {
  if (given.empty()) return systems::default_params(id);
  ParamMap p = given;
  for (const auto& name : systems::parameter_names(id)) {
    if (!p.count(name)) p[name] = systems::default_params(id).at(name);
  }
  for (const auto& [k, v] : given) {
    const auto names = systems::parameter_names(id);
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw DomainError(systems::to_string(id) + " has no parameter " + k);
  }
  return p;
}

json params_json(const ParamMap& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = algebra::to_string(v);
  return j;
}

std::vector<Vec2> chart_points(const CatalogEntry& e, int n) {
  const auto& ch = *e.oval_chart;
  std::vector<Vec2> pts;
  for (int i = 1; i <= n; ++i) {
    const double t = ch.tau1 + (ch.tau2 - ch.tau1) * i / (n + 1.0);
    pts.push_back(ch.point(t, 1));
    pts.push_back(ch.point(t, -1));
  }
  return pts;
}

/// Transformed entry paired with its original, when the family has a birational map.
struct MapPair {
  CatalogEntry transformed, original;
};

std::optional<MapPair> map_pair(const CatalogEntry& e) {
  switch (e.id) {
    case SystemId::fil_transformed: {
      const Rational c = e.params.at("c");
      return MapPair{e, systems::catalog_instantiate(SystemId::filipstov, {{"a", 3 * c / (4 + 5 * c)}})};
    }
    case SystemId::filipstov: {
      const Rational a = e.params.at("a");
      return MapPair{systems::catalog_instantiate(SystemId::fil_transformed, {{"c", 4 * a / (3 - 5 * a)}}), e};
    }
    case SystemId::ch1_transformed:
      return MapPair{e, systems::catalog_instantiate(SystemId::chavarriga, e.params)};
    case SystemId::chavarriga:
      return MapPair{systems::catalog_instantiate(SystemId::ch1_transformed, e.params), e};
    default:
      return std::nullopt;
  }
}

/// Points on the entry's oval: chart points, or transformed chart points pushed through the map.
std::vector<Vec2> oval_samples(const CatalogEntry& e, int n) {
  if (e.oval_chart) return chart_points(e, n);
  if (auto mp = map_pair(e)) {
    std::vector<Vec2> pts;
    for (const Vec2& s : chart_points(mp->transformed, n)) pts.push_back(mp->transformed.map->forward(s));
    return pts;
  }
  return {e.seed};
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const SystemId id = require_system(cfg);
  const ParamMap params = effective_params(id, cfg.params);
  const CatalogEntry e = systems::catalog_instantiate(id, params);
  Report r("verify");
  r.info["system"] = systems::to_string(id);
  r.info["params"] = params_json(params);
  r.info["domain"] = e.domain;
  if (e.near_boundary) r.info["near_boundary"] = true;

  const auto pts = oval_samples(e, cfg.points);
  if (e.system.is_polynomial()) {
    const algebra::BiPoly res = systems::cofactor_residual(e.system, e.curve);
    r.check("cofactor_residual_exact", static_cast<double>(res.terms().size()), 0.0, "nonzero terms");
  } else {
    r.check("cofactor_residual_pointwise", systems::pointwise_residual(e.system, e.curve, pts), 1e-10);
  }
  double scale = 1.0;
  for (const Vec2& p : pts) scale = std::max(scale, e.curve.gradient(p).norm() * std::max(1.0, p.norm()));
  const double gmin = systems::gradient_nonvanishing_check(e.curve, pts, 1e-8 * scale);
  r.checks.push_back({"gradient_nonvanishing", gmin, 0.0, gmin > 1e-8, "min |grad f| on the oval"});

  if (auto mp = map_pair(e)) {
    const auto& m = *mp->transformed.map;
    const auto base = chart_points(mp->transformed, 25);
    std::vector<Vec2> samples;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double d = 0.02 * std::sin(1.7 * static_cast<double>(i) + 0.3);
      samples.push_back(base[i] + Vec2(d, -0.5 * d));
    }
    const auto pulled = systems::divide_by_time_factor(mp->transformed.system, m.time_factor);
    r.check("transform_divergence", systems::transform_divergence_check(m, mp->original.system, pulled, samples),
            1e-8, m.name);
    r.check("round_trip", systems::round_trip_error(m, samples), 1e-12);
  }
  r.write(out, cfg.format);
  return r.pass() ? exit_pass : exit_numerical;
}

// ---------------------------------------------------------------- hyperbolicity

std::vector<Method> available_methods(const CatalogEntry& e) {
  std::vector<Method> m;
  if (ovalquad::has_closed_form(e.id)) m.push_back(Method::closed_form);
  if (ovalquad::has_reduced_integrand(e.id)) m.push_back(Method::reduced_quadrature);
  if (e.oval_chart) m.push_back(Method::raw_quadrature);
  m.push_back(Method::ode);
  return m;
}

std::vector<Method> selected_methods(const RunConfig& cfg, const CatalogEntry& e) {
  const auto avail = available_methods(e);
  if (cfg.methods.empty()) return avail;
  for (Method m : cfg.methods) {
    if (std::find(avail.begin(), avail.end(), m) == avail.end())
      throw DomainError("method " + ovalquad::to_string(m) + " is not available for " + systems::to_string(e.id));
  }
  return cfg.methods;
}

double rel_diff(double x, double y) { return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-6}); }

bool consistent(Stability expected, Stability got) {
  if (expected == Stability::hyperbolic) return got != Stability::center_band;
  return expected == got;
}

struct Evaluation {
  std::vector<std::pair<Method, HyperbolicityResult>> results;
  std::vector<std::pair<Method, std::string>> failures;
  double max_rel = 0.0;

  const HyperbolicityResult* reference() const { return results.empty() ? nullptr : &results.front().second; }
};

Evaluation evaluate(const CatalogEntry& e, const std::vector<Method>& methods) {
  Evaluation ev;
  for (Method m : methods) {
    try {
      ev.results.emplace_back(m, ovalquad::hyperbolicity(e, m));
    } catch (const NumericalError& ex) {
      ev.failures.emplace_back(m, ex.what());
    }
  }
  for (std::size_t i = 0; i < ev.results.size(); ++i)
    for (std::size_t j = i + 1; j < ev.results.size(); ++j)
      ev.max_rel = std::max(ev.max_rel, rel_diff(ev.results[i].second.D, ev.results[j].second.D));
  return ev;
}

int cmd_hyperbolicity(const RunConfig& cfg, std::ostream& out) {
  const SystemId id = require_system(cfg);
  const ParamMap params = effective_params(id, cfg.params);
  const CatalogEntry e = systems::catalog_instantiate(id, params);
  const Evaluation ev = evaluate(e, selected_methods(cfg, e));
  Report r("hyperbolicity");
  r.info["system"] = systems::to_string(id);
  r.info["params"] = params_json(params);
  for (const auto& [m, res] : ev.results) {
    r.info["D_" + ovalquad::to_string(m)] = num(res.D);
    r.info["err_" + ovalquad::to_string(m)] = num(res.error);
  }
  for (const auto& [m, msg] : ev.failures) r.flag("method_" + ovalquad::to_string(m), false, msg);
  r.check("agreement", ev.max_rel, cfg.rel_tol, "max pairwise relative difference");
  if (const HyperbolicityResult* ref = ev.reference()) {
    const Stability v = ovalquad::stability_from_D(ref->D, 1e-6);
    r.info["verdict"] = systems::to_string(v);
    r.info["expected"] = systems::to_string(e.expected_stability);
    r.flag("verdict_matches_catalog", consistent(e.expected_stability, v));
    if (e.original_stability && ref->D_original) {
      const Stability vo = ovalquad::stability_from_D(*ref->D_original, 1e-6);
      r.info["D_original"] = num(*ref->D_original);
      r.info["original_verdict"] = systems::to_string(vo);
      r.flag("original_verdict_matches_catalog", consistent(*e.original_stability, vo));
    }
  }
  r.write(out, cfg.format);
  return r.pass() ? exit_pass : exit_numerical;
}

// ---------------------------------------------------------------- sweep

struct SweepOutcome {
  Rational param;
  Evaluation ev;
  std::string verdict;
  std::string status;
  bool ok = false;
};

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const SystemId id = require_system(cfg);
  const auto names = systems::parameter_names(id);
  if (names.empty()) throw DomainError(systems::to_string(id) + " has no parameter to sweep");
  const std::string pname = cfg.sweep_param.empty() ? names.front() : cfg.sweep_param;
  if (std::find(names.begin(), names.end(), pname) == names.end())
    throw DomainError(systems::to_string(id) + " has no parameter " + pname);
  if (cfg.range.empty()) throw DomainError("sweep: --range start:stop:step is required");
  const std::vector<Rational> values = parse_range(cfg.range);
  ParamMap fixed = cfg.params;
  fixed.erase(pname);

  std::vector<CatalogEntry> entries;
  for (const Rational& v : values) {
    ParamMap p = fixed;
    p[pname] = v;
    entries.push_back(systems::catalog_instantiate(id, effective_params(id, p)));
  }
  const std::vector<Method> methods = selected_methods(cfg, entries.front());

  std::vector<SweepOutcome> rows(values.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(values.size())));
  auto work = [&](unsigned k) {
    for (std::size_t i = k; i < values.size(); i += workers) {
      SweepOutcome& row = rows[i];
      row.param = values[i];
      row.ev = evaluate(entries[i], methods);
      const CatalogEntry& e = entries[i];
      std::string status;
      for (const auto& [m, msg] : row.ev.failures) status += ovalquad::to_string(m) + " failed: " + msg + "; ";
      if (const HyperbolicityResult* ref = row.ev.reference()) {
        const Stability v = ovalquad::stability_from_D(ref->D, 1e-6);
        row.verdict = systems::to_string(v);
        if (!consistent(e.expected_stability, v)) status += "verdict differs from catalog; ";
      }
      if (row.ev.max_rel > cfg.rel_tol) status += "methods disagree; ";
      row.ok = status.empty();
      row.status = row.ok ? "ok" : status.substr(0, status.size() - 2);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < workers; ++k) pool.emplace_back(work, k);
  work(0);
  for (auto& t : pool) t.join();

  const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const SweepOutcome& r) { return r.ok; });
  auto value_of = [](const SweepOutcome& row, Method m) -> std::optional<HyperbolicityResult> {
    for (const auto& [mm, res] : row.ev.results)
      if (mm == m) return res;
    return std::nullopt;
  };
  emit(cfg, out, [&](std::ostream& os) {
    if (cfg.format == Format::json) {
      json j;
      j["schema"] = 1;
      j["command"] = "sweep";
      j["system"] = systems::to_string(id);
      j["param"] = pname;
      j["fixed"] = params_json(fixed);
      json arr = json::array();
      for (const SweepOutcome& row : rows) {
        json e;
        e["param"] = algebra::to_string(row.param);
        e["param_value"] = row.param.get_d();
        for (Method m : methods) {
          const auto res = value_of(row, m);
          e["D_" + ovalquad::to_string(m)] = res ? num(res->D) : json(nullptr);
        }
        e["max_rel_diff"] = num(row.ev.max_rel);
        e["verdict"] = row.verdict;
        e["status"] = row.status;
        arr.push_back(e);
      }
      j["rows"] = arr;
      j["pass"] = all_ok;
      os << j.dump(2) << '\n';
      return;
    }
    os << "param,param_value";
    for (Method m : methods) os << ",D_" << ovalquad::to_string(m);
    for (Method m : methods) os << ",err_" << ovalquad::to_string(m);
    os << ",max_rel_diff,verdict,status\n";
    for (const SweepOutcome& row : rows) {
      os << algebra::to_string(row.param) << ',' << fmt(row.param.get_d());
      for (Method m : methods) {
        const auto res = value_of(row, m);
        os << ',' << (res ? fmt(res->D) : "");
      }
      for (Method m : methods) {
        const auto res = value_of(row, m);
        os << ',' << (res ? fmt(res->error) : "");
      }
      std::string status = row.status;
      std::replace(status.begin(), status.end(), ',', ';');
      os << ',' << fmt(row.ev.max_rel) << ',' << row.verdict << ',' << status << '\n';
    }
  });
  return all_ok ? exit_pass : exit_numerical;
}

// ---------------------------------------------------------------- checks

std::vector<double> grid_values(const RunConfig& cfg, double lo, double hi) {
  std::vector<double> v;
  if (!cfg.range.empty()) {
    for (const Rational& q : parse_range(cfg.range)) v.push_back(q.get_d());
    return v;
  }
  const int n = cfg.points;
  for (int i = 1; i <= n; ++i) v.push_back(lo + (hi - lo) * i / (n + 1.0));
  return v;
}

int cmd_checks_theorem(const RunConfig& cfg, Report& r) {
  const SystemId id = require_system(cfg);
  const ParamMap params = effective_params(id, cfg.params);
  const CatalogEntry e = systems::catalog_instantiate(id, params);
  r.info["system"] = systems::to_string(id);
  r.info["params"] = params_json(params);
  const auto orb = flow::find_periodic_orbit(e.system, e.seed, 0.0, {}, &e.curve);
  const auto I = flow::orbit_integrals(orb, e.curve);
  r.info["period"] = orb.period;
  r.info["int_div"] = I.div;
  r.info["int_k"] = I.k;
  r.check("theorem_residual", flow::theorem_residual(e.system, e.curve, orb), 1e-6, "|int div - int k|");
  return 0;
}

int cmd_checks_monodromy(const RunConfig& cfg, Report& r) {
  const SystemId id = require_system(cfg);
  const ParamMap params = effective_params(id, cfg.params);
  const CatalogEntry e = systems::catalog_instantiate(id, params);
  r.info["system"] = systems::to_string(id);
  r.info["params"] = params_json(params);
  const auto orb = flow::find_periodic_orbit(e.system, e.seed, 0.0, {}, &e.curve);
  const flow::Monodromy m = flow::monodromy_matrix(e.system, orb, &e.curve);
  r.info["period"] = m.period;
  r.info["int_div"] = m.I_div;
  r.info["int_k"] = m.I_k;
  r.info["det_M"] = m.M.determinant();
  r.check("liouville", m.liouville_residual(), 1e-6, "det M vs exp(int div)");
  r.check("left_eigenvector", m.left_eigen_residual(e.curve.gradient(m.p0)), 1e-5, "grad f M vs exp(int k) grad f");
  r.check("flow_direction", m.flow_direction_residual(), 1e-5, "M F(p0) vs F(p0)");
  return 0;
}

void elliptic_checks(const RunConfig& cfg, Report& r) {
  double worst_ch2 = 0.0, worst_der = 0.0, worst_fil = 0.0;
  for (double a : grid_values(cfg, 0.0, 0.25)) {
    worst_ch2 = std::max(worst_ch2, elliptic::identity_relch2(a).scaled());
    worst_der = std::max(worst_der, elliptic::relch2_derivative_residual(a));
  }
  RunConfig plain = cfg;
  plain.range.clear();
  for (double c : grid_values(plain, 0.0, 0.5)) worst_fil = std::max(worst_fil, elliptic::identity_relfil(c).scaled());
  r.check("relch2", worst_ch2, 1e-10, "max scaled residual");
  r.check("relch2_derivative", worst_der, 1e-10, "max coefficient residual");
  r.check("relfil", worst_fil, 1e-10, "max scaled residual");
}

void fuchs_checks(const RunConfig& cfg, Report& r) {
  double worst = 0.0;
  for (double a : grid_values(cfg, 0.0, 0.25)) worst = std::max(worst, elliptic::fuchs_residual(a).scaled());
  r.check("fuchs", worst, 1e-8, "max scaled residual");
  const double pi = std::numbers::pi, s2 = std::numbers::sqrt2;
  const double d1 = -8.0 * s2 * pi / 9.0, d2 = 98.0 * s2 * pi / 27.0;
  r.check("D(1/4)", std::abs(elliptic::D_closed_form(0.25, 0)), 1e-9);
  r.check("D'(1/4)", std::abs(elliptic::D_closed_form(0.25, 1) - d1) / std::abs(d1), 1e-9);
  r.check("D''(1/4)", std::abs(elliptic::D_closed_form(0.25, 2) - d2) / std::abs(d2), 1e-9);
}

int cmd_checks(const RunConfig& cfg, std::ostream& out) {
  Report r("checks " + cfg.subcommand);
  if (cfg.subcommand == "theorem") cmd_checks_theorem(cfg, r);
  else if (cfg.subcommand == "monodromy") cmd_checks_monodromy(cfg, r);
  else if (cfg.subcommand == "elliptic") elliptic_checks(cfg, r);
  else if (cfg.subcommand == "fuchs") fuchs_checks(cfg, r);
  else throw DomainError("checks: unknown subcommand '" + cfg.subcommand + "' (theorem, monodromy, elliptic, fuchs)");
  emit(cfg, out, [&](std::ostream& os) { r.write(os, cfg.format); });
  return r.pass() ? exit_pass : exit_numerical;
}

// ---------------------------------------------------------------- elliptic-check

int cmd_elliptic_check(const RunConfig& cfg, std::ostream& out) {
  struct Row {
    std::string identity;
    double param, residual, tol;
  };
  std::vector<Row> rows;
  RunConfig plain = cfg;
  plain.range.clear();
  for (double a : grid_values(plain, 0.0, 0.25)) rows.push_back({"relch2", a, elliptic::identity_relch2(a).scaled(), 1e-10});
  for (double a : grid_values(plain, 0.0, 0.25))
    rows.push_back({"relch2_derivative", a, elliptic::relch2_derivative_residual(a), 1e-10});
  for (double c : grid_values(plain, 0.0, 0.5)) rows.push_back({"relfil", c, elliptic::identity_relfil(c).scaled(), 1e-10});
  for (double a : grid_values(plain, 0.0, 0.25)) rows.push_back({"fuchs", a, elliptic::fuchs_residual(a).scaled(), 1e-8});
  bool all = true;
  emit(cfg, out, [&](std::ostream& os) {
    os << "identity,param,residual,tolerance,pass\n";
    for (const Row& row : rows) {
      const bool ok = row.residual <= row.tol;
      all = all && ok;
      os << row.identity << ',' << fmt(row.param) << ',' << fmt(row.residual) << ',' << fmt(row.tol) << ','
         << (ok ? "pass" : "fail") << '\n';
    }
  });
  return all ? exit_pass : exit_numerical;
}

// ---------------------------------------------------------------- catalog, orbit

int cmd_catalog(const RunConfig& cfg, std::ostream& out) {
  json arr = json::array();
  std::vector<SystemId> ids = cfg.system ? std::vector<SystemId>{*cfg.system} : systems::all_system_ids();
  for (SystemId id : ids) {
    const ParamMap params = effective_params(id, cfg.system ? cfg.params : ParamMap{});
    const CatalogEntry e = systems::catalog_instantiate(id, params);
    json j;
    j["id"] = systems::to_string(id);
    j["params"] = params_json(params);
    j["domain"] = e.domain;
    if (e.polys) {
      j["P"] = e.polys->P.to_string();
      j["Q"] = e.polys->Q.to_string();
      j["f"] = e.polys->f.to_string();
      j["k"] = e.polys->k.to_string();
    }
    j["expected_stability"] = systems::to_string(e.expected_stability);
    if (e.original_stability) j["original_stability"] = systems::to_string(*e.original_stability);
    if (e.oval_chart) j["turning_points"] = {e.oval_chart->tau1, e.oval_chart->tau2};
    j["seed"] = {e.seed.x(), e.seed.y()};
    if (e.map) j["map"] = e.map->name;
    j["orientation"] = e.orientation_note;
    j["origin"] = e.origin;
    arr.push_back(j);
  }
  json root;
  root["schema"] = 1;
  root["command"] = "catalog";
  root["systems"] = arr;
  emit(cfg, out, [&](std::ostream& os) { os << root.dump(2) << '\n'; });
  return exit_pass;
}

int cmd_orbit(const RunConfig& cfg, std::ostream& out) {
  const SystemId id = require_system(cfg);
  const CatalogEntry e = systems::catalog_instantiate(id, effective_params(id, cfg.params));
  const auto orb = flow::find_periodic_orbit(e.system, e.seed, 0.0, {}, &e.curve);
  emit(cfg, out, [&](std::ostream& os) { flow::write_orbit_csv(os, orb, &e.curve); });
  return exit_pass;
}

}  // namespace

std::vector<Rational> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw DomainError("range must be start:stop:step, got '" + text + "'");
  Rational start, stop, step;
  try {
    start = algebra::parse_rational(parts[0]);
    stop = algebra::parse_rational(parts[1]);
    step = algebra::parse_rational(parts[2]);
  } catch (const ParseError& e) {
    throw DomainError("bad range '" + text + "': " + e.what());
  }
  if (step <= 0) throw DomainError("range step must be positive");
  if (stop < start) throw DomainError("empty range '" + text + "'");
  std::vector<Rational> out;
  for (Rational v = start; v <= stop; v += step) {
    out.push_back(v);
    if (out.size() > 100000) throw DomainError("range has more than 100000 points");
  }
  return out;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (!(cfg.rel_tol > 0.0)) throw DomainError("tolerances must be positive");
  if (cfg.points <= 0) throw DomainError("--points must be positive");
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  if (cfg.command == "hyperbolicity") return cmd_hyperbolicity(cfg, out);
  if (cfg.command == "sweep") return cmd_sweep(cfg, out);
  if (cfg.command == "checks") return cmd_checks(cfg, out);
  if (cfg.command == "elliptic-check") return cmd_elliptic_check(cfg, out);
  if (cfg.command == "catalog") return cmd_catalog(cfg, out);
  if (cfg.command == "orbit") return cmd_orbit(cfg, out);
  throw DomainError("unknown command '" + cfg.command + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divergence integrals along algebraic limit cycles", "alcycle"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string system, format = "text", methods;
  std::map<std::string, std::string> raw_params;
  std::string sub;

  auto add_system = [&](CLI::App* s) { s->add_option("--system", system, "system id"); };
  auto add_params = [&](CLI::App* s) {
    for (const char* name : {"a", "b", "c", "n"})
      s->add_option(std::string("--") + name, raw_params[name], std::string("parameter ") + name + " (p/q or decimal)");
  };
  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    s->add_option("--output,-o", cfg.output, "output file");
  };

  CLI::App* verify = app.add_subcommand("verify", "exact and pointwise invariance checks");
  CLI::App* hyp = app.add_subcommand("hyperbolicity", "divergence integral by several methods");
  CLI::App* sweep = app.add_subcommand("sweep", "hyperbolicity over a parameter range");
  CLI::App* checks = app.add_subcommand("checks", "theorem, monodromy, elliptic or fuchs checks");
  CLI::App* ell = app.add_subcommand("elliptic-check", "CSV table of the elliptic identities");
  CLI::App* cat = app.add_subcommand("catalog", "JSON dump of the catalog");
  CLI::App* orbit = app.add_subcommand("orbit", "CSV of a periodic orbit");
  for (CLI::App* s : {verify, hyp, sweep, checks, cat, orbit}) {
    add_system(s);
    add_params(s);
  }
  for (CLI::App* s : {verify, hyp, sweep, checks, ell, cat, orbit}) add_common(s);
  for (CLI::App* s : {hyp, sweep}) {
    s->add_option("--methods", methods, "comma separated: ode, reduced, raw, closed");
    s->add_option("--rel-tol", cfg.rel_tol, "agreement tolerance");
  }
  sweep->add_option("--range", cfg.range, "start:stop:step");
  sweep->add_option("--param", cfg.sweep_param, "parameter to sweep");
  checks->add_option("kind", sub, "theorem, monodromy, elliptic or fuchs")->required();
  checks->add_option("--grid", cfg.range, "start:stop:step");
  for (CLI::App* s : {verify, checks, ell}) s->add_option("--points", cfg.points, "grid size");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    for (CLI::App* s : app.get_subcommands()) cfg.command = s->get_name();
    cfg.subcommand = sub;
    cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
    if (!system.empty()) cfg.system = systems::parse_system_id(system);
    for (const auto& [k, v] : raw_params) {
      if (v.empty()) continue;
      // a range given in place of the value selects the sweep parameter
      if (cfg.command == "sweep" && v.find(':') != std::string::npos) {
        cfg.sweep_param = k;
        cfg.range = v;
        continue;
      }
      cfg.params[k] = algebra::parse_rational(v);
    }
    if (!methods.empty()) {
      std::stringstream ms(methods);
      for (std::string m; std::getline(ms, m, ',');) cfg.methods.push_back(ovalquad::parse_method(m));
    }
    return execute(cfg, out, err);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace alc::cli
