#include "alc/elliptic/elliptic.hpp"

#include <algorithm>
#include <boost/math/special_functions/ellint_rd.hpp>
#include <boost/math/special_functions/ellint_rf.hpp>
#include <boost/math/special_functions/ellint_rj.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "alc/errors.hpp"
#include "series.hpp"

namespace alc::elliptic {

namespace {

using detail::Series;
constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

void require_omega(double w, const char* what) {
  if (!(w < 1.0)) throw DomainError(std::string(what) + ": requires omega < 1, got " + std::to_string(w));
}

void require_kappa(double k) {
  if (!(k < 1.0)) throw DomainError("elliptic_Pi: requires kappa < 1, got " + std::to_string(k));
}

// --- series near a = 1/4, in r = sqrt(1 - 4a) ---

constexpr std::size_t kTerms = 40;
constexpr double kSeriesBelow = 0.05;

// (1/2)_n / n!
std::vector<double> half_pochhammer(std::size_t n) {
  std::vector<double> p(n);
  p[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) p[i] = p[i - 1] * (static_cast<double>(i) - 0.5) / static_cast<double>(i);
  return p;
}

Series series_K(const Series& w) {
  const auto h = half_pochhammer(kTerms);
  std::vector<double> f(kTerms);
  for (std::size_t i = 0; i < kTerms; ++i) f[i] = pi / 2 * h[i] * h[i];
  return compose(f, w);
}

Series series_E(const Series& w) {
  const auto h = half_pochhammer(kTerms);
  std::vector<double> f(kTerms);
  // (-1/2)_n / n! = (1/2)_n / n! / (1 - 2n)
  for (std::size_t i = 0; i < kTerms; ++i) f[i] = pi / 2 * h[i] * h[i] / (1.0 - 2.0 * static_cast<double>(i));
  return compose(f, w);
}

// pi/2 sum_{i,j} kappa^i w^j (1/2)_j/j! (1/2)_{i+j}/(i+j)!
Series series_Pi(const Series& kappa, const Series& w) {
  const auto h = half_pochhammer(kTerms);
  Series total(kTerms);
  Series kp(kTerms, 1.0);
  for (std::size_t i = 0; i < kTerms; ++i) {
    std::vector<double> f(kTerms - i);
    for (std::size_t j = 0; j + i < kTerms; ++j) f[j] = pi / 2 * h[j] * h[i + j];
    total += kp * compose(f, w);
    kp = kp * kappa;
  }
  return total;
}

struct ClosedFormSeries {
  Series d0{kTerms}, d1{kTerms}, d2{kTerms}, d3{kTerms};
};

ClosedFormSeries build_series() {
  const std::size_t n = kTerms;
  const Series r({0.0, 1.0}, n);
  const Series a({0.25, 0.0, -0.25}, n);
  const Series one(n, 1.0);
  const Series s = (Series(n, 16.0) - a).sqrt();
  const Series mu2 = one + r;
  const Series mu = mu2.sqrt();
  const Series w0 = 2.0 * r * mu2.inverse();
  const Series wp = 2.0 * r * (Series(n, 9.0) + r + 2.0 * s).inverse();
  const Series wm = 2.0 * r * (Series(n, 9.0) + r - 2.0 * s).inverse();
  const Series cp = 0.5 * (Series(n, 9.0) - r) + s;
  const Series cm = 0.5 * (Series(n, 9.0) - r) - s;
  const Series bp = 2.0 * (Series(n, 4.0) + s) * cp;
  const Series bm = 2.0 * (Series(n, 4.0) - s) * cm;
  const Series K = series_K(w0), E = series_E(w0);
  const Series Pp = series_Pi(wp, w0), Pm = series_Pi(wm, w0);
  const Series ainv = a.inverse();
  const Series a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  const Series s2 = s * s;
  const Series ms = (mu * s).inverse();
  const Series ms3 = (mu * s * s2).inverse();
  const Series ms5 = (mu * s * s2 * s2).inverse();
  const Series ms7 = (mu * s * s2 * s2 * s2).inverse();

  ClosedFormSeries out;
  out.d0 = sqrt2 * ms * (-34.0 * s * K + bp * Pp - bm * Pm);
  out.d1 = -4.0 * sqrt2 * ms3 * (s * K + 2.0 * mu2 * s * ainv * E - cp * Pp + cm * Pm);

  // 1/(1 - 4a) = r^-2
  const Series p2k = 10.0 * a2 + 33.0 * a - Series(n, 64.0);
  const Series p2e = 73.0 * a2 - 420.0 * a + Series(n, 128.0);
  const Series sing2 = p2k * s * (3.0 * a).inverse() * K + p2e * mu2 * s * (6.0 * a2).inverse() * E;
  {
    const Series sh = sing2.shifted(2, 1e-12);
    Series full(n);
    for (std::size_t i = 0; i < sh.size(); ++i) full[i] = sh[i];
    out.d2 = 6.0 * sqrt2 * ms5 * (full + cp * Pp - cm * Pm);
    // coefficients past n - 2 are unknown after the shift
    for (std::size_t i = n - 2; i < n; ++i) out.d2[i] = 0.0;
  }

  const Series p3k = 180.0 * a4 + 1347.0 * a3 - 9685.0 * a2 + 25664.0 * a - Series(n, 4096.0);
  const Series p3e = 1812.0 * a4 - 20259.0 * a3 + 102164.0 * a2 - 60544.0 * a + Series(n, 8192.0);
  const Series sing3 = p3k * s * a2.inverse() * K + p3e * mu2 * s * (2.0 * a3).inverse() * E;
  {
    const Series sh = sing3.shifted(4, 1e-12);
    Series full(n);
    for (std::size_t i = 0; i < sh.size(); ++i) full[i] = sh[i];
    out.d3 = -sqrt2 * ms7 * (full - 15.0 * cp * Pp + 15.0 * cm * Pm);
    for (std::size_t i = n - 4; i < n; ++i) out.d3[i] = 0.0;
  }
  return out;
}

const ClosedFormSeries& closed_form_series() {
  static const ClosedFormSeries s = build_series();
  return s;
}

double closed_form_direct(double a, int order) {
  const Relch2Params p = relch2_params(a);
  const double K = elliptic_K(p.w0), E = elliptic_E(p.w0);
  const double Pp = elliptic_Pi(p.wp, p.w0), Pm = elliptic_Pi(p.wm, p.w0);
  const double s = p.s, mu = p.mu, mu2 = mu * mu, one4a = p.r * p.r;
  switch (order) {
    case 0:
      return sqrt2 / (mu * s) * (-34.0 * s * K + p.bp * Pp - p.bm * Pm);
    case 1:
      return -4.0 * sqrt2 / (mu * std::pow(s, 3)) * (s * K + 2.0 * mu2 * s / a * E - p.cp * Pp + p.cm * Pm);
    case 2:
      return 6.0 * sqrt2 / (mu * std::pow(s, 5)) *
             ((10 * a * a + 33 * a - 64) * s / (3 * a * one4a) * K +
              (73 * a * a - 420 * a + 128) * mu2 * s / (6 * a * a * one4a) * E + p.cp * Pp - p.cm * Pm);
    default: {
      const double a2 = a * a, a3 = a2 * a, a4 = a3 * a;
      return -sqrt2 / (mu * std::pow(s, 7)) *
             ((180 * a4 + 1347 * a3 - 9685 * a2 + 25664 * a - 4096) * s / (a2 * one4a * one4a) * K +
              (1812 * a4 - 20259 * a3 + 102164 * a2 - 60544 * a + 8192) * mu2 * s / (2 * a3 * one4a * one4a) * E -
              15 * p.cp * Pp + 15 * p.cm * Pm);
    }
  }
}

}  // namespace

double elliptic_K(double w) {
  require_omega(w, "elliptic_K");
  return boost::math::ellint_rf(0.0, 1.0 - w, 1.0);
}

double elliptic_E(double w) {
  if (!(w <= 1.0)) throw DomainError("elliptic_E: requires omega <= 1, got " + std::to_string(w));
  if (w == 1.0) return 1.0;
  if (w == 0.0) return pi / 2;
  const double y = 1.0 - w;
  return boost::math::ellint_rf(0.0, y, 1.0) - w / 3.0 * boost::math::ellint_rd(0.0, y, 1.0);
}

double elliptic_Pi(double kappa, double w) {
  require_omega(w, "elliptic_Pi");
  require_kappa(kappa);
  const double y = 1.0 - w;
  if (kappa == 0.0) return boost::math::ellint_rf(0.0, y, 1.0);
  return boost::math::ellint_rf(0.0, y, 1.0) + kappa / 3.0 * boost::math::ellint_rj(0.0, y, 1.0, 1.0 - kappa);
}

EllipticDerivatives elliptic_derivatives(double w, double kappa) {
  if (!(w > 0.0 && w < 1.0)) throw DomainError("elliptic_derivatives: requires 0 < omega < 1");
  if (!(kappa > 0.0 && kappa < 1.0)) throw DomainError("elliptic_derivatives: requires 0 < kappa < 1");
  if (kappa == w) throw DomainError("elliptic_derivatives: dPi/dkappa is singular at kappa = omega");
  const double K = elliptic_K(w), E = elliptic_E(w), P = elliptic_Pi(kappa, w);
  EllipticDerivatives d;
  d.dK = E / (2.0 * (1.0 - w) * w) - K / (2.0 * w);
  d.dE = E / (2.0 * w) - K / (2.0 * w);
  d.dPi_dkappa = K / (2.0 * kappa * (kappa - 1.0)) + E / (2.0 * (kappa - 1.0) * (w - kappa)) +
                 (kappa * kappa - w) / (2.0 * kappa * (kappa - 1.0) * (w - kappa)) * P;
  d.dPi_domega = E / (2.0 * (kappa - w) * (w - 1.0)) + P / (2.0 * (kappa - w));
  return d;
}

Relch2Params relch2_params(double a) {
  if (!(a > 0.0 && a <= 0.25)) throw DomainError("relch2: requires 0 < a <= 1/4");
  Relch2Params p;
  p.r = std::sqrt(1.0 - 4.0 * a);
  p.s = std::sqrt(16.0 - a);
  p.w0 = 2.0 * p.r / (1.0 + p.r);
  p.wp = 2.0 * p.r / (9.0 + p.r + 2.0 * p.s);
  p.wm = 2.0 * p.r / (9.0 + p.r - 2.0 * p.s);
  p.cp = (9.0 - p.r) / 2.0 + p.s;
  p.cm = (9.0 - p.r) / 2.0 - p.s;
  p.mu = std::sqrt(1.0 + p.r);
  p.bp = 2.0 * (4.0 + p.s) * p.cp;
  p.bm = 2.0 * (4.0 - p.s) * p.cm;
  return p;
}

RelfilParams relfil_params(double c) {
  if (!(c > 0.0 && c < 0.5)) throw DomainError("relfil: requires 0 < c < 1/2");
  const double r = std::sqrt(1.0 - 4.0 * c * c);
  const double q = std::sqrt(64.0 * (1.0 + 2.0 * c) * (1.0 + 2.0 * c) + c * c);
  const double base = 9.0 + 17.0 * c + r;
  RelfilParams p;
  p.s0 = 2.0 * r / (1.0 + r);
  p.sp = 2.0 * r / (base + q);
  p.sm = 2.0 * r / (base - q);
  p.Cp = -2.0 * (24.0 + 47.0 * c + 3.0 * q) / (base + q);
  p.Cm = -2.0 * (24.0 + 47.0 * c - 3.0 * q) / (base - q);
  return p;
}

IdentityResidual identity_relch2(double a) {
  if (!(a > 0.0 && a < 0.25)) throw DomainError("relch2: requires 0 < a < 1/4");
  const Relch2Params p = relch2_params(a);
  const double t0 = -9.0 * elliptic_K(p.w0);
  const double t1 = p.cp * elliptic_Pi(p.wp, p.w0);
  const double t2 = p.cm * elliptic_Pi(p.wm, p.w0);
  return {std::abs(t0 + t1 + t2), std::max({std::abs(t0), std::abs(t1), std::abs(t2)})};
}

double relch2_derivative_residual(double a) {
  if (!(a > 0.0 && a < 0.25)) throw DomainError("relch2: requires 0 < a < 1/4");
  const Relch2Params p = relch2_params(a);
  const double r = p.r, s = p.s;
  const double dr = -2.0 / r, ds = -1.0 / (2.0 * s);
  const double dw0 = 2.0 / ((1.0 + r) * (1.0 + r)) * dr;
  auto dw = [&](double sign) {
    const double den = 9.0 + r + sign * 2.0 * s;
    return (2.0 * dr * den - 2.0 * r * (dr + sign * 2.0 * ds)) / (den * den);
  };
  const double w = p.w0;
  double aK = 9.0 * dw0 / (2.0 * w);
  double aE = -9.0 * dw0 / (2.0 * w * (1.0 - w));
  double aP[2];
  const double C[2] = {p.cp, p.cm};
  const double kap[2] = {p.wp, p.wm};
  const double dC[2] = {-dr / 2.0 + ds, -dr / 2.0 - ds};
  const double dk[2] = {dw(1.0), dw(-1.0)};
  for (int i = 0; i < 2; ++i) {
    const double k = kap[i];
    aK += C[i] * dk[i] / (2.0 * k * (k - 1.0));
    aE += C[i] * dk[i] / (2.0 * (k - 1.0) * (w - k)) + C[i] * dw0 / (2.0 * (k - w) * (w - 1.0));
    aP[i] = dC[i] + C[i] * dk[i] * (k * k - w) / (2.0 * k * (k - 1.0) * (w - k)) + C[i] * dw0 / (2.0 * (k - w));
  }
  const double f = -1.0 / (1.0 - 4.0 * a + r);
  const double scale = std::max({std::abs(aK), std::abs(aE), std::abs(aP[0]), std::abs(aP[1])});
  const double res = std::max({std::abs(aK - f * -9.0), std::abs(aE), std::abs(aP[0] - f * C[0]),
                               std::abs(aP[1] - f * C[1])});
  return res / scale;
}

IdentityResidual identity_relfil(double c) {
  const RelfilParams p = relfil_params(c);
  const double t0 = 5.0 * elliptic_K(p.s0);
  const double t1 = p.Cp * elliptic_Pi(p.sp, p.s0);
  const double t2 = p.Cm * elliptic_Pi(p.sm, p.s0);
  return {std::abs(t0 + t1 + t2), std::max({std::abs(t0), std::abs(t1), std::abs(t2)})};
}

double D_closed_form(double a, int order) {
  if (order < 0 || order > 3) throw PreconditionError("D_closed_form: order must be 0..3");
  if (!(a > 0.0 && a <= 0.25)) throw DomainError("D_closed_form: requires 0 < a <= 1/4");
  const double r = std::sqrt(1.0 - 4.0 * a);
  if (r < kSeriesBelow) {
    const ClosedFormSeries& s = closed_form_series();
    const Series* pick[] = {&s.d0, &s.d1, &s.d2, &s.d3};
    return (*pick[order])(r);
  }
  return closed_form_direct(a, order);
}

IdentityResidual fuchs_residual(double a) {
  if (!(a > 0.0 && a < 0.25)) throw DomainError("fuchs: requires 0 < a < 1/4");
  const double t[4] = {
      8.0 * (a - 16.0) * a * (4.0 * a - 1.0) * (17.0 * a + 8.0) * D_closed_form(a, 3),
      4.0 * (612.0 * a * a * a - 4119.0 * a * a - 2600.0 * a + 512.0) * D_closed_form(a, 2),
      6.0 * (a - 2.0) * (289.0 * a + 528.0) * D_closed_form(a, 1),
      3.0 * (17.0 * a + 64.0) * D_closed_form(a, 0),
  };
  double scale = 0.0;
  for (double v : t) scale = std::max(scale, std::abs(v));
  return {std::abs(t[0] + t[1] + t[2] + t[3]), scale};
}

}  // namespace alc::elliptic
