#include "series.hpp"

#include <cmath>

#include "alc/errors.hpp"

namespace alc::elliptic::detail {

Series::Series(std::initializer_list<double> c, std::size_t n) : c_(n, 0.0) {
  std::size_t i = 0;
  for (double v : c)
    if (i < n) c_[i++] = v;
}

Series& Series::operator+=(const Series& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Series& Series::operator-=(const Series& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Series& Series::operator*=(double k) {
  for (double& v : c_) v *= k;
  return *this;
}

Series operator*(const Series& l, const Series& r) {
  const std::size_t n = l.size();
  Series out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (l.c_[i] == 0.0) continue;
    for (std::size_t j = 0; i + j < n; ++j) out.c_[i + j] += l.c_[i] * r.c_[j];
  }
  return out;
}

Series Series::inverse() const {
  if (c_[0] == 0.0) throw NumericalError("series inverse needs a nonzero constant term");
  const std::size_t n = size();
  Series out(n);
  out.c_[0] = 1.0 / c_[0];
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * out.c_[k - j];
    out.c_[k] = -acc / c_[0];
  }
  return out;
}

Series Series::sqrt() const {
  if (!(c_[0] > 0.0)) throw NumericalError("series square root needs a positive constant term");
  const std::size_t n = size();
  Series out(n);
  out.c_[0] = std::sqrt(c_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = c_[k];
    for (std::size_t j = 1; j < k; ++j) acc -= out.c_[j] * out.c_[k - j];
    out.c_[k] = acc / (2.0 * out.c_[0]);
  }
  return out;
}

Series Series::shifted(std::size_t m, double tol) const {
  double scale = 0.0;
  for (double v : c_) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < m; ++i)
    if (std::abs(c_[i]) > tol * scale) throw NumericalError("series: leading coefficients do not cancel");
  Series out(size() - m);
  for (std::size_t i = m; i < size(); ++i) out.c_[i - m] = c_[i];
  return out;
}

double Series::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Series compose(const std::vector<double>& f, const Series& x) {
  if (x[0] != 0.0) throw NumericalError("series composition needs x(0) = 0");
  const std::size_t n = x.size();
  const std::size_t top = std::min(f.size(), n);
  Series acc(n);
  for (std::size_t i = top; i-- > 0;) {
    acc = acc * x;
    acc[0] += f[i];
  }
  return acc;
}

}  // namespace alc::elliptic::detail
