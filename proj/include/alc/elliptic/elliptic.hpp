#pragma once

namespace alc::elliptic {

// All functions take the parameter omega (it multiplies sin^2 theta), never the modulus.

/// K(w) = int_0^{pi/2} dtheta / sqrt(1 - w sin^2 theta), w < 1.
double elliptic_K(double w);
/// E(w) = int_0^{pi/2} sqrt(1 - w sin^2 theta) dtheta, w <= 1.
double elliptic_E(double w);
/// Pi(kappa, w) = int_0^{pi/2} dtheta / ((1 - kappa sin^2 theta) sqrt(1 - w sin^2 theta)), kappa < 1, w < 1.
double elliptic_Pi(double kappa, double w);

struct EllipticDerivatives {
  double dK;         ///< K'(w)
  double dE;         ///< E'(w)
  double dPi_dkappa;
  double dPi_domega;
};

/// Closed-form derivatives; 0 < w < 1, 0 < kappa < 1, kappa != w.
EllipticDerivatives elliptic_derivatives(double w, double kappa);

struct Relch2Params {
  double r;  ///< sqrt(1 - 4a)
  double s;  ///< sqrt(16 - a)
  double w0, wp, wm, cp, cm, mu, bp, bm;
};
Relch2Params relch2_params(double a);

struct RelfilParams {
  double s0, sp, sm, Cp, Cm;
};
RelfilParams relfil_params(double c);

struct IdentityResidual {
  double residual;  ///< |LHS|
  double scale;     ///< largest term magnitude
  double scaled() const { return residual / scale; }
};

/// -9 K(w0) + c+ Pi(w+, w0) + c- Pi(w-, w0), 0 < a < 1/4.
IdentityResidual identity_relch2(double a);

/// Differentiating the relch2 combination in a gives alpha_K K + alpha_E E + alpha_+ Pi+ + alpha_- Pi-.
/// Returns max over the four coefficients of |alpha - f * (coefficient of the combination)| / max |alpha|,
/// with f = -1/(1 - 4a + sqrt(1 - 4a)) (so alpha_E must vanish).
double relch2_derivative_residual(double a);

/// 5 K(s0) + C+ Pi(s+, s0) + C- Pi(s-, s0), 0 < c < 1/2.
IdentityResidual identity_relfil(double c);

/// Closed form of the chlls hyperbolicity integral and its first three derivatives in a.
/// 0 < a <= 1/4; near a = 1/4 the expressions are evaluated as truncated series in sqrt(1 - 4a).
double D_closed_form(double a, int order = 0);

/// Residual of the third-order Fuchs equation satisfied by D; scale is the largest term.
IdentityResidual fuchs_residual(double a);

}  // namespace alc::elliptic
