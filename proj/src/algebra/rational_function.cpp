#include "alc/algebra/rational_function.hpp"

#include <cctype>
#include <cmath>

#include "alc/errors.hpp"

namespace alc::algebra {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ParseError("empty rational literal");
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  auto all_digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char ch : t)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string n = body.substr(0, slash), d = body.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) throw ParseError("malformed rational '" + text + "'");
    mpz_class den(d);
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    value = Rational(mpz_class(n), den);
    value.canonicalize();
  } else {
    std::string mantissa = body;
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string::npos) {
      mantissa = body.substr(0, e);
      std::string ex = body.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) {
        eneg = ex[0] == '-';
        ex = ex.substr(1);
      }
      if (!all_digits(ex)) throw ParseError("malformed exponent in '" + text + "'");
      exponent = std::stol(ex) * (eneg ? -1 : 1);
    }
    std::string int_part = mantissa, frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string::npos) {
      int_part = mantissa.substr(0, dot);
      frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw ParseError("malformed number '" + text + "'");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
      throw ParseError("malformed number '" + text + "'");
    mpz_class digits(int_part.empty() ? "0" : int_part);
    for (char ch : frac_part) digits = digits * 10 + (ch - '0');
    exponent -= static_cast<long>(frac_part.size());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    value = exponent >= 0 ? Rational(digits * scale) : Rational(digits, scale);
    value.canonicalize();
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

UniPoly UniPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UniPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational UniPoly::operator()(const Rational& a) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * a + *it;
  return acc;
}

double UniPoly::operator()(double a) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * a + it->get_d();
  return acc;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UniPoly operator+(const UniPoly& p, const UniPoly& q) {
  std::vector<Rational> v(std::max(p.coeffs_.size(), q.coeffs_.size()));
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) v[i] += p.coeffs_[i];
  for (std::size_t i = 0; i < q.coeffs_.size(); ++i) v[i] += q.coeffs_[i];
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& p, const UniPoly& q) { return p + (-q); }

UniPoly operator*(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Rational> v(p.coeffs_.size() + q.coeffs_.size() - 1);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) v[i + j] += p.coeffs_[i] * q.coeffs_[j];
  return UniPoly(std::move(v));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = num.coeffs_;
  const int dd = den.degree();
  if (num.degree() < dd) return {UniPoly(), num};
  std::vector<Rational> quo(static_cast<std::size_t>(num.degree() - dd) + 1);
  const Rational& lead = den.leading();
  for (int k = num.degree() - dd; k >= 0; --k) {
    Rational c = rem[static_cast<std::size_t>(k + dd)] / lead;
    quo[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= c * den.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  UniPoly r = *this;
  const Rational lead = leading();
  for (auto& c : r.coeffs_) c /= lead;
  return r;
}

UniPoly UniPoly::gcd(UniPoly p, UniPoly q) {
  while (!q.is_zero()) {
    UniPoly r = divmod(p, q).second;
    p = std::move(q);
    q = std::move(r);
  }
  return p.monic();
}

namespace {

std::string monomial_string(const std::string& var, int power) {
  if (power == 0) return "";
  if (power == 1) return var;
  return var + "^" + std::to_string(power);
}

}  // namespace

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_string(var, i);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = UniPoly(Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    UniPoly g = UniPoly::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = UniPoly::divmod(num_, g).first;
      den_ = UniPoly::divmod(den_, g).first;
    }
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    UniPoly inv(Rational(1) / lead);
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw PreconditionError("rational function is not constant");
  return num_.coeff(0) / den_.coeff(0);
}

Rational RatFunc::operator()(const Rational& a) const {
  Rational d = den_(a);
  if (d == 0) throw DomainError("rational function pole at parameter " + a.get_str());
  return num_(a) / d;
}

double RatFunc::operator()(double a) const {
  double d = den_(a);
  if (d == 0.0) throw DomainError("rational function pole at parameter value");
  return num_(a) / d;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc operator+(const RatFunc& p, const RatFunc& q) {
  if (p.den_ == q.den_) return RatFunc(p.num_ + q.num_, p.den_);
  return RatFunc(p.num_ * q.den_ + q.num_ * p.den_, p.den_ * q.den_);
}

RatFunc operator-(const RatFunc& p, const RatFunc& q) { return p + (-q); }

RatFunc operator*(const RatFunc& p, const RatFunc& q) {
  if (p.is_zero() || q.is_zero()) return {};
  return RatFunc(p.num_ * q.num_, p.den_ * q.den_);
}

RatFunc operator/(const RatFunc& p, const RatFunc& q) { return p * q.inverse(); }

std::string RatFunc::to_string(const std::string& var) const {
  if (den_.is_constant()) {
    // den is monic, hence exactly 1
    return num_.to_string(var);
  }
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace alc::algebra
