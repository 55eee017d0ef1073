#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "alc/systems/fields.hpp"

namespace alc::ovalquad {

using systems::Vec2;

enum class Orientation { clockwise, counterclockwise };

std::string to_string(Orientation o);

/// Explicit two-branch chart of an oval over its first coordinate tau in [tau1, tau2]:
/// the oval is {(tau, y_plus(tau))} joined with {(tau, y_minus(tau))}, y_plus >= y_minus,
/// both branches meeting where the radicand g vanishes.
///
/// Every evaluator takes the distances d1 = tau - tau1 and d2 = tau2 - tau next to tau, so that
/// callers integrating up to the turning points can pass them without cancellation.
struct OvalChart {
  using Radicand = std::function<double(double tau, double d1, double d2)>;
  using Branch = std::function<double(double tau, double sqrt_g, int sign)>;

  double tau1 = 0.0;
  double tau2 = 0.0;
  Radicand radicand;  ///< g >= 0 on [tau1, tau2], zero at both ends
  Branch branch;      ///< y_sign(tau) given sqrt(g(tau)); sign is +1 or -1
  Orientation orientation = Orientation::clockwise;
  /// dtau/dt along the oval, i.e. the first component of the field at the chart point.
  std::function<double(const Vec2&)> p_along;

  double g(double tau) const { return radicand(tau, tau - tau1, tau2 - tau); }
  double y(double tau, int sign) const;
  Vec2 point(double tau, int sign) const { return {tau, y(tau, sign)}; }
  /// Point using the split distances; d1 + d2 must equal tau2 - tau1.
  Vec2 point(double tau, double d1, double d2, int sign) const;
};

/// Turning points of the oval of a chart-carrying family. Closed form where available; for
/// ch1_transformed a bracketed root solve of the cubic g(a, tau) = 4 a tau^2 (1 - tau) + (tau + 1)^2.
/// `id` is a systems::SystemId; params must already be validated.
std::pair<double, double> turning_points(int id, const std::map<std::string, double>& params);

/// Builds the chart for the families whose oval is a two-branch graph over the first
/// coordinate (nalc, chin2, yablonskii, chlls, fil_transformed, ch1_transformed).
/// p_along is bound to the given system.
std::optional<OvalChart> build_oval_chart(int id, const std::map<std::string, double>& params,
                                          const systems::PlanarSystem& system);

}  // namespace alc::ovalquad
