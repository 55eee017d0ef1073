#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>

#include "alc/algebra/param_scalar.hpp"

namespace alc::algebra {

using VarNames = std::array<std::string, 2>;

enum class ArithOp { add, sub, mul };

/// Bivariate polynomial with ParamScalar coefficients. Zero coefficients are never stored,
/// so equality is structural.
class BiPoly {
 public:
  using Exponent = std::pair<int, int>;
  using TermMap = std::map<Exponent, ParamScalar>;

  explicit BiPoly(VarNames vars = {"x", "y"}, ContextPtr ctx = nullptr);

  static BiPoly constant(const ParamScalar& c, VarNames vars = {"x", "y"});
  static BiPoly monomial(const ParamScalar& c, int i, int j, VarNames vars = {"x", "y"});
  /// The first (index 0) or second (index 1) variable.
  static BiPoly variable(int index, VarNames vars = {"x", "y"});

  const TermMap& terms() const { return terms_; }
  const VarNames& vars() const { return vars_; }
  const ContextPtr& context() const { return ctx_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  ParamScalar coeff(int i, int j) const;

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
  BiPoly& operator-=(const BiPoly& o) { return *this = *this - o; }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
  friend BiPoly operator+(const BiPoly& l, const BiPoly& r);
  friend BiPoly operator-(const BiPoly& l, const BiPoly& r);
  friend BiPoly operator*(const BiPoly& l, const BiPoly& r);
  friend BiPoly operator*(const ParamScalar& c, const BiPoly& p);
  friend bool operator==(const BiPoly& l, const BiPoly& r);
  BiPoly pow(int exponent) const;

  /// Formal partial derivative with respect to the named variable.
  BiPoly partial(const std::string& var) const;
  BiPoly partial(int index) const;

  /// Numeric value at (x, y) with the parameter set to a.
  double evaluate(double x, double y, double a = 0.0) const;
  /// Fixes the family parameter to an exact rational.
  BiPoly substitute_param(const Rational& a0) const;
  /// Same polynomial under new variable names.
  BiPoly renamed(VarNames vars) const;

  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const ParamScalar& c);
  TermMap terms_;
  VarNames vars_;
  ContextPtr ctx_;
};

BiPoly poly_arithmetic(const BiPoly& lhs, const BiPoly& rhs, ArithOp op);
BiPoly poly_partial(const BiPoly& p, const std::string& var);
double poly_eval(const BiPoly& p, double x, double y, double a = 0.0);

/// Parses the textual form produced by BiPoly::to_string. Accepts integers, p/q and decimal
/// literals, the two variable names, the context's parameter name, the root symbol "s", the
/// operators + - * / ^ and parentheses. Division is only allowed by nonzero scalars.
BiPoly parse_bipoly(const std::string& text, VarNames vars = {"x", "y"}, ContextPtr ctx = nullptr);

}  // namespace alc::algebra
