#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace alc::algebra {

/// Arbitrary-precision rational; always canonical (gcd-reduced, positive denominator).
using Rational = mpq_class;

/// Parses "p", "p/q" or a finite decimal such as "-0.125" into an exact rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Dense univariate polynomial over Q in the family parameter. Trailing zeros are trimmed,
/// so the zero polynomial has no coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  UniPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  UniPoly(long constant) : UniPoly(Rational(constant)) {}  // NOLINT
  static UniPoly monomial(const Rational& c, int degree);
  /// The polynomial "a" itself.
  static UniPoly variable() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& a) const;
  double operator()(double a) const;

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& p, const UniPoly& q);
  friend UniPoly operator-(const UniPoly& p, const UniPoly& q);
  friend UniPoly operator*(const UniPoly& p, const UniPoly& q);
  friend bool operator==(const UniPoly& p, const UniPoly& q) { return p.coeffs_ == q.coeffs_; }

  /// Euclidean division; divisor must be nonzero.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& num, const UniPoly& den);
  /// Monic gcd; gcd(0, 0) = 0.
  static UniPoly gcd(UniPoly p, UniPoly q);
  UniPoly monic() const;

  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Element of Q(a) in canonical form: gcd(num, den) = 1 and den monic.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Rational(1)) {}
  RatFunc(const Rational& q) : num_(q), den_(Rational(1)) {}  // NOLINT
  RatFunc(long q) : RatFunc(Rational(q)) {}                    // NOLINT
  RatFunc(const UniPoly& p) : num_(p), den_(Rational(1)) {}   // NOLINT
  RatFunc(UniPoly num, UniPoly den);

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Only valid when is_constant().
  Rational constant_value() const;

  Rational operator()(const Rational& a) const;
  double operator()(double a) const;

  RatFunc operator-() const;
  RatFunc inverse() const;
  friend RatFunc operator+(const RatFunc& p, const RatFunc& q);
  friend RatFunc operator-(const RatFunc& p, const RatFunc& q);
  friend RatFunc operator*(const RatFunc& p, const RatFunc& q);
  friend RatFunc operator/(const RatFunc& p, const RatFunc& q);
  friend bool operator==(const RatFunc& p, const RatFunc& q) {
    return p.num_ == q.num_ && p.den_ == q.den_;
  }

  std::string to_string(const std::string& var) const;

 private:
  void normalize();
  UniPoly num_;
  UniPoly den_;
};

}  // namespace alc::algebra
