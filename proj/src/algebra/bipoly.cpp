#include "alc/algebra/bipoly.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "alc/errors.hpp"

namespace alc::algebra {

BiPoly::BiPoly(VarNames vars, ContextPtr ctx) : vars_(std::move(vars)), ctx_(std::move(ctx)) {
  if (vars_[0] == vars_[1]) throw ContextError("variable names must differ");
}

BiPoly BiPoly::constant(const ParamScalar& c, VarNames vars) { return monomial(c, 0, 0, std::move(vars)); }

BiPoly BiPoly::monomial(const ParamScalar& c, int i, int j, VarNames vars) {
  if (i < 0 || j < 0) throw PreconditionError("negative exponent");
  BiPoly p(std::move(vars), c.context());
  p.add_term({i, j}, c);
  return p;
}

BiPoly BiPoly::variable(int index, VarNames vars) {
  if (index != 0 && index != 1) throw ContextError("variable index must be 0 or 1");
  return monomial(ParamScalar(1), index == 0 ? 1 : 0, index == 1 ? 1 : 0, std::move(vars));
}

void BiPoly::add_term(const Exponent& e, const ParamScalar& c) {
  if (c.is_zero()) return;
  ctx_ = merge_contexts(ctx_, c.context());
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int BiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

ParamScalar BiPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? ParamScalar() : it->second;
}

namespace {

void check_vars(const BiPoly& l, const BiPoly& r) {
  if (l.vars() != r.vars())
    throw ContextError("variable mismatch: (" + l.vars()[0] + "," + l.vars()[1] + ") vs (" + r.vars()[0] + "," +
                       r.vars()[1] + ")");
}

}  // namespace

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

BiPoly operator+(const BiPoly& l, const BiPoly& r) {
  check_vars(l, r);
  BiPoly out = l;
  out.ctx_ = merge_contexts(l.ctx_, r.ctx_);
  for (const auto& [e, c] : r.terms_) out.add_term(e, c);
  return out;
}

BiPoly operator-(const BiPoly& l, const BiPoly& r) { return l + (-r); }

BiPoly operator*(const BiPoly& l, const BiPoly& r) {
  check_vars(l, r);
  BiPoly out(l.vars_, merge_contexts(l.ctx_, r.ctx_));
  for (const auto& [el, cl] : l.terms_)
    for (const auto& [er, cr] : r.terms_) out.add_term({el.first + er.first, el.second + er.second}, cl * cr);
  return out;
}

BiPoly operator*(const ParamScalar& c, const BiPoly& p) {
  BiPoly out(p.vars_, merge_contexts(p.ctx_, c.context()));
  for (const auto& [e, pc] : p.terms_) out.add_term(e, c * pc);
  return out;
}

bool operator==(const BiPoly& l, const BiPoly& r) {
  if (l.vars_ != r.vars_ || l.terms_.size() != r.terms_.size()) return false;
  auto it = r.terms_.begin();
  for (const auto& [e, c] : l.terms_) {
    if (e != it->first || !(c == it->second)) return false;
    ++it;
  }
  return true;
}

BiPoly BiPoly::pow(int exponent) const {
  if (exponent < 0) throw PreconditionError("negative polynomial power");
  BiPoly result = constant(ParamScalar(1), vars_);
  BiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

BiPoly BiPoly::partial(int index) const {
  if (index != 0 && index != 1) throw ContextError("variable index must be 0 or 1");
  BiPoly out(vars_, ctx_);
  for (const auto& [e, c] : terms_) {
    const int power = index == 0 ? e.first : e.second;
    if (power == 0) continue;
    Exponent ne = e;
    (index == 0 ? ne.first : ne.second) -= 1;
    out.add_term(ne, ParamScalar(power) * c);
  }
  return out;
}

BiPoly BiPoly::partial(const std::string& var) const {
  if (var == vars_[0]) return partial(0);
  if (var == vars_[1]) return partial(1);
  throw ContextError("unknown variable '" + var + "'");
}

double BiPoly::evaluate(double x, double y, double a) const {
  if (ctx_ && ctx_->has_extension() && (*ctx_->sigma)(a) < 0.0)
    throw DomainError("square-root extension evaluated where sigma < 0");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) acc += c.evaluate(a) * std::pow(x, e.first) * std::pow(y, e.second);
  return acc;
}

BiPoly BiPoly::substitute_param(const Rational& a0) const {
  ContextPtr ctx;
  if (ctx_ && ctx_->has_extension()) {
    const Rational sigma = (*ctx_->sigma)(a0);
    if (sigma < 0) throw DomainError("square-root extension: sigma(" + a0.get_str() + ") < 0");
    if (!rational_sqrt(sigma)) ctx = make_context("", UniPoly(sigma));
  }
  BiPoly out(vars_, ctx);
  for (const auto& [e, c] : terms_) out.add_term(e, c.substitute(a0));
  return out;
}

BiPoly BiPoly::renamed(VarNames vars) const {
  BiPoly out = *this;
  if (vars[0] == vars[1]) throw ContextError("variable names must differ");
  out.vars_ = std::move(vars);
  return out;
}

std::string BiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, const ParamScalar*>> order;
  order.reserve(terms_.size());
  for (const auto& [e, c] : terms_) order.emplace_back(e, &c);
  std::sort(order.begin(), order.end(), [](const auto& l, const auto& r) {
    const int dl = l.first.first + l.first.second, dr = r.first.first + r.first.second;
    if (dl != dr) return dl > dr;
    return l.first.first > r.first.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, cp] : order) {
    const ParamScalar& c = *cp;
    std::string mono;
    auto append_var = [&mono](const std::string& v, int p) {
      if (p == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (p > 1) mono += "^" + std::to_string(p);
    };
    append_var(vars_[0], e.first);
    append_var(vars_[1], e.second);
    std::string coeff;
    bool negative = false;
    if (c.is_rational()) {
      Rational v = c.rational_value();
      negative = v < 0;
      Rational mag = abs(v);
      if (!(mag == 1 && !mono.empty())) coeff = mag.get_str();
    } else {
      coeff = c.to_string();
    }
    std::string term = coeff;
    if (!mono.empty()) term += (term.empty() ? "" : "*") + mono;
    if (first) {
      out += (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
    first = false;
  }
  return out;
}

BiPoly poly_arithmetic(const BiPoly& lhs, const BiPoly& rhs, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return lhs + rhs;
    case ArithOp::sub:
      return lhs - rhs;
    case ArithOp::mul:
      return lhs * rhs;
  }
  throw PreconditionError("unknown arithmetic operation");
}

BiPoly poly_partial(const BiPoly& p, const std::string& var) { return p.partial(var); }

double poly_eval(const BiPoly& p, double x, double y, double a) { return p.evaluate(x, y, a); }

}  // namespace alc::algebra
