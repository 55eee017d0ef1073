#include "alc/algebra/param_scalar.hpp"

#include <cmath>

#include "alc/errors.hpp"

namespace alc::algebra {

ContextPtr make_context(std::string param, std::optional<UniPoly> sigma) {
  if (param.empty() && sigma && !sigma->is_constant())
    throw ContextError("non-constant sigma requires a named parameter");
  if (param.empty() && !sigma) return nullptr;
  return std::make_shared<const Context>(Context{std::move(param), std::move(sigma)});
}

bool same_context(const ContextPtr& lhs, const ContextPtr& rhs) {
  if (lhs == rhs) return true;
  if (!lhs || !rhs) return false;
  return *lhs == *rhs;
}

ContextPtr merge_contexts(const ContextPtr& lhs, const ContextPtr& rhs) {
  if (same_context(lhs, rhs)) return lhs;
  if (!lhs) return rhs;
  if (!rhs) return lhs;
  if (lhs->has_param() && rhs->has_param() && lhs->param != rhs->param)
    throw ContextError("parameter mismatch: '" + lhs->param + "' vs '" + rhs->param + "'");
  if (lhs->sigma && rhs->sigma && !(*lhs->sigma == *rhs->sigma))
    throw ContextError("square-root extensions differ");
  std::string param = lhs->has_param() ? lhs->param : rhs->param;
  auto sigma = lhs->sigma ? lhs->sigma : rhs->sigma;
  return make_context(param, sigma);
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

ParamScalar::ParamScalar(RatFunc r0, RatFunc r1, ContextPtr ctx)
    : r0_(std::move(r0)), r1_(std::move(r1)), ctx_(std::move(ctx)) {
  if (!r1_.is_zero() && !(ctx_ && ctx_->has_extension()))
    throw ContextError("root component given without an extension context");
  if ((!r0_.is_constant() || !r1_.is_constant()) && !(ctx_ && ctx_->has_param()))
    throw ContextError("parameter-dependent coefficient without a parameter context");
}

ParamScalar ParamScalar::parameter(ContextPtr ctx) {
  if (!ctx || !ctx->has_param()) throw ContextError("context has no parameter");
  return ParamScalar(RatFunc(UniPoly::variable()), RatFunc(), std::move(ctx));
}

ParamScalar ParamScalar::root(ContextPtr ctx) {
  if (!ctx || !ctx->has_extension()) throw ContextError("context has no square-root extension");
  return ParamScalar(RatFunc(), RatFunc(Rational(1)), std::move(ctx));
}

Rational ParamScalar::rational_value() const {
  if (!is_rational()) throw PreconditionError("coefficient is not a plain rational");
  return r0_.constant_value();
}

RatFunc ParamScalar::sigma_as_ratfunc() const { return RatFunc(*ctx_->sigma); }

double ParamScalar::evaluate(double a) const {
  double value = r0_(a);
  if (ctx_ && ctx_->has_extension()) {
    const double sigma = (*ctx_->sigma)(a);
    if (sigma < 0.0) throw DomainError("square-root extension evaluated where sigma < 0");
    if (!r1_.is_zero()) value += r1_(a) * std::sqrt(sigma);
  }
  return value;
}

ParamScalar ParamScalar::substitute(const Rational& a0) const {
  if (!ctx_) return *this;
  const Rational v0 = ctx_->has_param() ? r0_(a0) : r0_.constant_value();
  if (!ctx_->has_extension()) return ParamScalar(v0);
  const Rational sigma = (*ctx_->sigma)(a0);
  if (sigma < 0) throw DomainError("square-root extension: sigma(" + a0.get_str() + ") < 0");
  const Rational v1 = ctx_->has_param() ? r1_(a0) : r1_.constant_value();
  if (auto root = rational_sqrt(sigma)) return ParamScalar(Rational(v0 + v1 * *root));
  auto ctx = make_context("", UniPoly(sigma));
  return ParamScalar(RatFunc(v0), RatFunc(v1), ctx);
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar r = *this;
  r.r0_ = -r.r0_;
  r.r1_ = -r.r1_;
  return r;
}

ParamScalar operator+(const ParamScalar& l, const ParamScalar& r) {
  ParamScalar out;
  out.ctx_ = merge_contexts(l.ctx_, r.ctx_);
  out.r0_ = l.r0_ + r.r0_;
  out.r1_ = l.r1_ + r.r1_;
  return out;
}

ParamScalar operator-(const ParamScalar& l, const ParamScalar& r) { return l + (-r); }

ParamScalar operator*(const ParamScalar& l, const ParamScalar& r) {
  ParamScalar out;
  out.ctx_ = merge_contexts(l.ctx_, r.ctx_);
  out.r0_ = l.r0_ * r.r0_;
  if (!l.r1_.is_zero() && !r.r1_.is_zero()) out.r0_ = out.r0_ + l.r1_ * r.r1_ * out.sigma_as_ratfunc();
  out.r1_ = l.r0_ * r.r1_ + l.r1_ * r.r0_;
  return out;
}

ParamScalar ParamScalar::inverse() const {
  if (r1_.is_zero()) return ParamScalar(r0_.inverse(), RatFunc(), ctx_);
  RatFunc norm = r0_ * r0_ - r1_ * r1_ * sigma_as_ratfunc();
  if (norm.is_zero()) throw DomainError("zero divisor in square-root extension");
  return ParamScalar(r0_ / norm, -r1_ / norm, ctx_);
}

bool operator==(const ParamScalar& l, const ParamScalar& r) {
  if (!(l.r0_ == r.r0_) || !(l.r1_ == r.r1_)) return false;
  // plain rationals compare equal across contexts
  if (l.r1_.is_zero() && l.r0_.is_constant()) return true;
  return same_context(l.ctx_, r.ctx_);
}

std::string ParamScalar::to_string() const {
  const std::string var = ctx_ && ctx_->has_param() ? ctx_->param : "a";
  if (r1_.is_zero()) {
    if (r0_.is_constant()) return r0_.constant_value().get_str();
    return "(" + r0_.to_string(var) + ")";
  }
  std::string root = "(" + r1_.to_string(var) + ")*s";
  if (r0_.is_zero()) return "(" + root + ")";
  return "(" + r0_.to_string(var) + " + " + root + ")";
}

}  // namespace alc::algebra
