#pragma once

#include <functional>
#include <string>
#include <vector>

#include "alc/systems/fields.hpp"

namespace alc::systems {

/// Change of variables (x, y) = forward(u, v) with rational inverse, together with the
/// time factor h that turns the pulled-back field into the published transformed system
/// (transformed = h * pulled back). orientation_sign is the sign of h along the oval:
/// -1 means the reparameterisation reverses the direction of the flow.
struct BirationalMap {
  std::string name;
  std::function<Vec2(const Vec2&)> forward;
  std::function<Mat2(const Vec2&)> forward_jacobian;  ///< d(x, y)/d(u, v)
  std::function<Vec2(const Vec2&)> inverse;
  std::function<double(const Vec2&)> jacobian;            ///< J(u, v) = det forward_jacobian
  std::function<Vec2(const Vec2&)> jacobian_gradient;     ///< (J_u, J_v)
  std::function<double(const Vec2&)> inverse_jacobian;    ///< det d(u, v)/d(x, y), closed form
  ScalarField time_factor;
  int orientation_sign = 1;
};

BirationalMap identity_map();

/// Map between Filipstov's system at a = 3c/(4+5c) and its transformed form in (u, v).
BirationalMap filipstov_map(double c);

/// Map between Chavarriga's system and its transformed form in (u, v).
BirationalMap chavarriga_map(double a);

/// max over samples of |div_src(forward(s)) - div_dst(s) - (J_u R + J_v S)(s) / J(s)| where
/// (R, S) is dst's field. dst must be the pulled-back field (time factor removed).
double transform_divergence_check(const BirationalMap& map, const PlanarSystem& src, const PlanarSystem& dst,
                                  const std::vector<Vec2>& samples, double singular_floor = 1e-12);

/// max over samples of |forward(inverse(forward(s))) - forward(s)| and |inverse(forward(s)) - s|,
/// each relative to max(1, |reference point|).
double round_trip_error(const BirationalMap& map, const std::vector<Vec2>& samples);

}  // namespace alc::systems
