#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alc/algebra/bipoly.hpp"
#include "alc/ovalquad/oval_chart.hpp"
#include "alc/systems/birational.hpp"
#include "alc/systems/fields.hpp"

namespace alc::systems {

enum class SystemId { nalc, chin2, yablonskii, filipstov, chavarriga, chlls, fil_transformed, ch1_transformed };

/// hyperbolic: the cycle is hyperbolic but the sign is not asserted.
enum class Stability { stable, unstable, center_band, hyperbolic };

std::string to_string(SystemId id);
std::string to_string(Stability s);
/// Accepts canonical ids plus the short aliases "fil" and "ch1".
SystemId parse_system_id(const std::string& name);
const std::vector<SystemId>& all_system_ids();

using ParamMap = std::map<std::string, algebra::Rational>;

/// Names of the free parameters of a family, in order.
std::vector<std::string> parameter_names(SystemId id);
/// Human-readable parameter domain, e.g. "0 < a < 1/4".
std::string parameter_domain(SystemId id);

/// Exact P, Q, f, k, possibly with a symbolic family parameter.
struct FamilyPolys {
  algebra::BiPoly P, Q, f, k;
};

/// Symbolic polynomials of a one-parameter polynomial family (the parameter stays a symbol).
FamilyPolys symbolic_family(SystemId id);
/// Polynomials with every parameter fixed to the given exact values.
FamilyPolys instantiated_family(SystemId id, const ParamMap& params);

struct CatalogEntry {
  SystemId id;
  ParamMap params;
  std::string domain;
  PlanarSystem system;
  InvariantCurve curve;
  std::optional<FamilyPolys> polys;  ///< absent only for the transcendental system
  Stability expected_stability;
  /// For transformed entries: stability of the cycle in the original coordinates.
  std::optional<Stability> original_stability;
  std::string orientation_note;
  std::optional<ovalquad::OvalChart> oval_chart;
  /// Map to the original system (transformed entries only).
  std::optional<BirationalMap> map;
  /// A point on the cycle, used to seed orbit computations.
  Vec2 seed;
  std::string origin;
  /// Points within 1e-3 (relative to the interval) of a domain endpoint are allowed but flagged.
  bool near_boundary = false;

  /// Value of the single family parameter ("a", or "c" for fil_transformed).
  double primary_param() const;
};

/// Validates the parameters against the family's domain (exact comparison) and builds the entry.
/// Throws DomainError naming the violated inequality.
CatalogEntry catalog_instantiate(SystemId id, const ParamMap& params);

/// Fixed interior sample parameter sets used by tests and the CLI when none are given.
ParamMap default_params(SystemId id);

}  // namespace alc::systems
