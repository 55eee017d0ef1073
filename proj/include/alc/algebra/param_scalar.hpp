#pragma once

#include <memory>
#include <optional>
#include <string>

#include "alc/algebra/rational_function.hpp"

namespace alc::algebra {

/// Arithmetic context for coefficients: an optional symbolic parameter (e.g. "a") and an
/// optional square-root extension s with s^2 = sigma(param).
struct Context {
  std::string param;             ///< empty when coefficients are plain numbers
  std::optional<UniPoly> sigma;  ///< present iff the symbol s is adjoined

  bool has_param() const { return !param.empty(); }
  bool has_extension() const { return sigma.has_value(); }
  friend bool operator==(const Context& l, const Context& r) {
    return l.param == r.param && l.sigma == r.sigma;
  }
};

using ContextPtr = std::shared_ptr<const Context>;

ContextPtr make_context(std::string param, std::optional<UniPoly> sigma = std::nullopt);

/// Smallest context containing both; throws ContextError when they are incompatible.
ContextPtr merge_contexts(const ContextPtr& lhs, const ContextPtr& rhs);
bool same_context(const ContextPtr& lhs, const ContextPtr& rhs);

/// r0(a) + r1(a) * s in Q(a)[s]/(s^2 - sigma(a)).
class ParamScalar {
 public:
  ParamScalar() = default;
  ParamScalar(const Rational& q) : r0_(q) {}  // NOLINT(google-explicit-constructor)
  ParamScalar(long q) : r0_(Rational(q)) {}   // NOLINT
  ParamScalar(RatFunc r0, RatFunc r1, ContextPtr ctx);

  /// The parameter itself in the given context.
  static ParamScalar parameter(ContextPtr ctx);
  /// The adjoined root s.
  static ParamScalar root(ContextPtr ctx);

  const RatFunc& r0() const { return r0_; }
  const RatFunc& r1() const { return r1_; }
  const ContextPtr& context() const { return ctx_; }

  bool is_zero() const { return r0_.is_zero() && r1_.is_zero(); }
  bool is_rational() const { return r1_.is_zero() && r0_.is_constant(); }
  Rational rational_value() const;

  /// Numeric value at parameter a. Throws DomainError when sigma(a) < 0 or at a pole.
  double evaluate(double a) const;
  /// Fixes the parameter to an exact value. The extension is kept with constant sigma unless
  /// sigma(a0) is a rational square, in which case s is replaced by its value.
  ParamScalar substitute(const Rational& a0) const;

  ParamScalar operator-() const;
  ParamScalar inverse() const;
  ParamScalar& operator+=(const ParamScalar& o) { return *this = *this + o; }
  ParamScalar& operator-=(const ParamScalar& o) { return *this = *this - o; }
  ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }
  friend ParamScalar operator+(const ParamScalar& l, const ParamScalar& r);
  friend ParamScalar operator-(const ParamScalar& l, const ParamScalar& r);
  friend ParamScalar operator*(const ParamScalar& l, const ParamScalar& r);
  friend ParamScalar operator/(const ParamScalar& l, const ParamScalar& r) { return l * r.inverse(); }
  friend bool operator==(const ParamScalar& l, const ParamScalar& r);

  std::string to_string() const;

 private:
  RatFunc sigma_as_ratfunc() const;
  RatFunc r0_;
  RatFunc r1_;
  ContextPtr ctx_;
};

/// Exact square root of a nonnegative rational when it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& q);

}  // namespace alc::algebra
