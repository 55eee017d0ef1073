#pragma once

#include <functional>

namespace alc::ovalquad {

enum class QuadMethod { gauss_sine, tanh_sinh };

struct QuadratureSpec {
  QuadMethod method = QuadMethod::gauss_sine;
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_levels = 15;
  /// Apply tau = m + r sin(theta) first (Gauss-Kronrod only). Turns sqrt((tau - a)(b - tau))
  /// endpoint behaviour into an analytic integrand.
  bool sine_substitution = true;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

/// Integrand that also receives d1 = tau - a and d2 = b - tau, computed without cancellation.
using SplitIntegrand = std::function<double(double tau, double d1, double d2)>;

/// Throws ConvergenceError when the error estimate exceeds max(abs_tol, rel_tol |value|)
/// (rel_tol times the L1 norm of the integrand for tanh-sinh).
QuadResult quadrature(const std::function<double(double)>& fn, double a, double b, const QuadratureSpec& spec = {});
QuadResult quadrature_split(const SplitIntegrand& fn, double a, double b, const QuadratureSpec& spec = {});

}  // namespace alc::ovalquad
