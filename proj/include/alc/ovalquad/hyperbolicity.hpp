#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alc/flow/flow.hpp"
#include "alc/ovalquad/quadrature.hpp"
#include "alc/systems/catalog.hpp"

namespace alc::ovalquad {

enum class Method { reduced_quadrature, raw_quadrature, ode, closed_form };

std::string to_string(Method m);
Method parse_method(const std::string& name);

/// D = int_0^T div(gamma(t)) dt for the entry's own system.
struct HyperbolicityResult {
  double D = 0.0;
  Method method = Method::ode;
  std::optional<double> w;  ///< weight in (1 + w) div - w k, when a weighted integrand was used
  double error = 0.0;
  /// For transformed entries: D of the original system (sign of the time factor applied).
  std::optional<double> D_original;
};

/// Turning points of the chart for entry's family at its parameter.
std::pair<double, double> oval_endpoints(const systems::CatalogEntry& entry);
std::pair<double, double> oval_endpoints(systems::SystemId id, double param);

/// Whether the reduced w = -3 integrand is available (chlls, fil_transformed, ch1_transformed and
/// the two originals reached through their maps).
bool has_reduced_integrand(systems::SystemId id);

HyperbolicityResult reduced_hyperbolicity_integral(const systems::CatalogEntry& entry,
                                                   const QuadratureSpec& spec = {});

/// int_0^T g dt as s * int_{tau1}^{tau2} [g / P](tau, y+) - [g / P](tau, y-) dtau, s = +1 for clockwise
/// ovals. The default spec uses tanh-sinh on the endpoint singularities.
QuadResult raw_divergence_integral(const systems::CatalogEntry& entry, const flow::Evaluable& g,
                                   const QuadratureSpec& spec = {QuadMethod::tanh_sinh, 1e-13, 1e-11, 15, false});

/// D from an orbit found by the return map, integrand carried in the ODE state.
HyperbolicityResult ode_hyperbolicity(const systems::CatalogEntry& entry, const flow::FlowOptions& opts = {});

/// Closed forms: chin2 (elementary) and chlls (elliptic).
bool has_closed_form(systems::SystemId id);
HyperbolicityResult closed_form_hyperbolicity(const systems::CatalogEntry& entry);

/// D for the circle limit cycle of chin2: 4 pi a / (a^2 + b^2) sign(c) (|c| / sqrt(c^2 - a^2 - b^2) - 1).
double chin_closed_form(double a, double b, double c);

HyperbolicityResult hyperbolicity(const systems::CatalogEntry& entry, Method method);

/// Stability implied by the sign of D (for transformed entries, of D_original when asked).
systems::Stability stability_from_D(double D, double tol = 1e-9);

struct SweepRow {
  double param;
  HyperbolicityResult reduced, raw, ode;
  bool agree;
};

/// Evaluates reduced, raw and ODE methods for each parameter of a one-parameter family.
/// agree requires pairwise relative differences <= rel_tol.
std::vector<SweepRow> sweep(systems::SystemId id, const std::vector<algebra::Rational>& params,
                            double rel_tol = 1e-5);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace alc::ovalquad
