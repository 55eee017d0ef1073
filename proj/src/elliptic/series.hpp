#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace alc::elliptic::detail {

/// Truncated power series sum c[n] x^n, n < size.
class Series {
 public:
  explicit Series(std::size_t n, double c0 = 0.0) : c_(n, 0.0) { c_[0] = c0; }
  Series(std::initializer_list<double> c, std::size_t n);

  std::size_t size() const { return c_.size(); }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }
  const std::vector<double>& coeffs() const { return c_; }

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(double k);
  friend Series operator+(Series l, const Series& r) { return l += r; }
  friend Series operator-(Series l, const Series& r) { return l -= r; }
  friend Series operator*(Series l, double k) { return l *= k; }
  friend Series operator*(double k, Series l) { return l *= k; }
  friend Series operator*(const Series& l, const Series& r);

  Series inverse() const;  ///< requires c[0] != 0
  Series sqrt() const;     ///< requires c[0] > 0
  /// Drops the first m coefficients (division by x^m). The dropped ones must be negligible.
  Series shifted(std::size_t m, double tol) const;
  double operator()(double x) const;

 private:
  std::vector<double> c_;
};

/// sum f[n] x^n with x[0] = 0.
Series compose(const std::vector<double>& f, const Series& x);

}  // namespace alc::elliptic::detail
