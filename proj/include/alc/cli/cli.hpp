#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "alc/ovalquad/hyperbolicity.hpp"
#include "alc/systems/catalog.hpp"

namespace alc::cli {

enum class Format { text, csv, json };

/// Exit codes of the command line.
enum ExitCode { exit_pass = 0, exit_numerical = 1, exit_usage = 2 };

struct RunConfig {
  std::string command;     ///< verify, hyperbolicity, sweep, checks, elliptic-check, catalog, orbit
  std::string subcommand;  ///< for checks: theorem, monodromy, elliptic, fuchs
  std::optional<systems::SystemId> system;
  systems::ParamMap params;
  std::string range;  ///< start:stop:step
  std::string sweep_param;
  std::vector<ovalquad::Method> methods;
  double rel_tol = 1e-5;
  std::string output;  ///< empty: standard output
  Format format = Format::text;
  int points = 50;
};

/// start:stop:step with exact rational arithmetic; every value start + i step <= stop.
/// Throws DomainError on an empty or malformed range.
std::vector<algebra::Rational> parse_range(const std::string& text);

/// Parses argv-style arguments (without the program name) and runs the command.
/// Returns 0 when every check passes, 1 on a numerical failure, 2 on a usage or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes an already parsed configuration.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace alc::cli
