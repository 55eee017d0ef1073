#include "alc/systems/birational.hpp"

#include <cmath>

#include "alc/errors.hpp"

namespace alc::systems {

BirationalMap identity_map() {
  BirationalMap m;
  m.name = "identity";
  m.forward = [](const Vec2& p) { return p; };
  m.forward_jacobian = [](const Vec2&) { return Mat2::Identity().eval(); };
  m.inverse = [](const Vec2& p) { return p; };
  m.jacobian = [](const Vec2&) { return 1.0; };
  m.jacobian_gradient = [](const Vec2&) { return Vec2(0.0, 0.0); };
  m.inverse_jacobian = [](const Vec2&) { return 1.0; };
  m.time_factor = ScalarField::constant(1.0);
  return m;
}

BirationalMap filipstov_map(double c) {
  const double root = std::sqrt(1.0 + 2.0 * c);
  const double q = 4.0 + 5.0 * c;
  // x = alpha W / (1+u)^3, y = beta W / (1+u)^4 with W = c - 2(1+c)u + c u^2 - 2 sqrt(1+2c) v
  const double alpha = -2.0 * (1.0 + 2.0 * c) / (c * c);
  const double beta = -12.0 * (1.0 + 2.0 * c) * (1.0 + 2.0 * c) / (c * c * q);
  auto w = [=](const Vec2& p) { return c - 2.0 * (1.0 + c) * p.x() + c * p.x() * p.x() - 2.0 * root * p.y(); };

  BirationalMap m;
  m.name = "filipstov";
  m.forward = [=](const Vec2& p) {
    const double s = 1.0 + p.x();
    const double wv = w(p);
    return Vec2(alpha * wv / (s * s * s), beta * wv / (s * s * s * s));
  };
  m.forward_jacobian = [=](const Vec2& p) {
    const double s = 1.0 + p.x();
    const double wv = w(p);
    const double wu = -2.0 * (1.0 + c) + 2.0 * c * p.x();
    const double wvv = -2.0 * root;
    const double s3 = s * s * s, s4 = s3 * s, s5 = s4 * s;
    Mat2 j;
    j << alpha * (wu / s3 - 3.0 * wv / s4), alpha * wvv / s3, beta * (wu / s4 - 4.0 * wv / s5), beta * wvv / s4;
    return j;
  };
  m.inverse = [=](const Vec2& p) {
    const double x = p.x(), y = p.y();
    const double u = 6.0 * (1.0 + 2.0 * c) * x / (q * y) - 1.0;
    const double bracket = (1.0 + 2.0 * c) * (54.0 * c * c * x * x * x * x + 18.0 * c * q * x * x * y -
                                              6.0 * q * q * x * y * y);
    const double v = root / (q * q * q * y * y * y) * bracket + root;
    return Vec2(u, v);
  };
  // det d(u,v)/d(x,y) = kappa x^4 / y^5
  const double kappa = 324.0 * c * c * std::pow(1.0 + 2.0 * c, 2.5) / (q * q * q * q);
  m.inverse_jacobian = [=](const Vec2& p) { return kappa * std::pow(p.x(), 4) / std::pow(p.y(), 5); };
  auto forward = m.forward;
  auto forward_jacobian = m.forward_jacobian;
  m.jacobian = [forward_jacobian](const Vec2& p) { return forward_jacobian(p).determinant(); };
  // J(u,v) = y^5 / (kappa x^4) at (x,y) = forward(u,v); chain rule through the forward map
  m.jacobian_gradient = [=](const Vec2& p) {
    const Vec2 xy = forward(p);
    const double x = xy.x(), y = xy.y();
    const Vec2 grad_xy(-4.0 * std::pow(y, 5) / (kappa * std::pow(x, 5)), 5.0 * std::pow(y, 4) / (kappa * std::pow(x, 4)));
    return Vec2(forward_jacobian(p).transpose() * grad_xy);
  };
  const double h0 = c * c * q / (12.0 * (1.0 + 2.0 * c));
  m.time_factor = ScalarField::closed_form(
      [h0](const Vec2& p) { return h0 * std::pow(1.0 + p.x(), 3); },
      [h0](const Vec2& p) { return Vec2(3.0 * h0 * (1.0 + p.x()) * (1.0 + p.x()), 0.0); });
  m.orientation_sign = 1;
  return m;
}

BirationalMap chavarriga_map(double a) {
  auto d = [a](const Vec2& p) { return p.y() + 1.0 + p.x() + 2.0 * a * p.x() * p.x(); };
  BirationalMap m;
  m.name = "chavarriga";
  m.forward = [d](const Vec2& p) {
    const double dv = d(p);
    return Vec2(-2.0 / dv, -2.0 * p.x() / dv);
  };
  m.forward_jacobian = [a, d](const Vec2& p) {
    const double dv = d(p), du = 1.0 + 4.0 * a * p.x();
    const double d2 = dv * dv;
    Mat2 j;
    j << 2.0 * du / d2, 2.0 / d2, -2.0 / dv + 2.0 * p.x() * du / d2, 2.0 * p.x() / d2;
    return j;
  };
  m.inverse = [a](const Vec2& p) {
    const double x = p.x(), y = p.y();
    return Vec2(y / x, -2.0 * a * y * y / (x * x) - (y + 2.0) / x - 1.0);
  };
  m.inverse_jacobian = [](const Vec2& p) { return -2.0 / (p.x() * p.x() * p.x()); };
  auto forward = m.forward;
  auto forward_jacobian = m.forward_jacobian;
  m.jacobian = [forward_jacobian](const Vec2& p) { return forward_jacobian(p).determinant(); };
  // J(u,v) = -x^3 / 2 at (x,y) = forward(u,v)
  m.jacobian_gradient = [=](const Vec2& p) {
    const double x = forward(p).x();
    const Vec2 grad_xy(-1.5 * x * x, 0.0);
    return Vec2(forward_jacobian(p).transpose() * grad_xy);
  };
  m.time_factor = ScalarField::closed_form(d, [a](const Vec2& p) { return Vec2(1.0 + 4.0 * a * p.x(), 1.0); });
  m.orientation_sign = -1;
  return m;
}

double transform_divergence_check(const BirationalMap& map, const PlanarSystem& src, const PlanarSystem& dst,
                                  const std::vector<Vec2>& samples, double singular_floor) {
  double worst = 0.0;
  for (const Vec2& s : samples) {
    const double j = map.jacobian(s);
    if (!(std::abs(j) >= singular_floor))
      throw SingularSampleError("jacobian " + std::to_string(j) + " below floor at (" + std::to_string(s.x()) + ", " +
                                std::to_string(s.y()) + ")");
    const double lhs = src.divergence(map.forward(s));
    const double rhs = dst.divergence(s) + map.jacobian_gradient(s).dot(dst.field(s)) / j;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double round_trip_error(const BirationalMap& map, const std::vector<Vec2>& samples) {
  double worst = 0.0;
  for (const Vec2& s : samples) {
    const Vec2 xy = map.forward(s);
    const Vec2 uv = map.inverse(xy);
    worst = std::max(worst, (uv - s).norm() / std::max(1.0, s.norm()));
    worst = std::max(worst, (map.forward(uv) - xy).norm() / std::max(1.0, xy.norm()));
  }
  return worst;
}

}  // namespace alc::systems
