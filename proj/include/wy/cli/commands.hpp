#pragma once

// The six wy-stability commands. Each returns a Report; run_cli wires argv
// parsing, dispatch, rendering and exit codes together.

#include <iosfwd>
#include <string>

#include "wy/cli/config.hpp"
#include "wy/cli/report.hpp"
#include "wy/harmonics.hpp"
#include "wy/quad.hpp"

namespace wy::cli {

struct Witness {
  int L = 0;
  FieldCoeffs coeffs;
  Json config_echo = Json::object();
};

Json witness_to_json(const Witness& w);
/// Throws std::invalid_argument on a malformed document.
Witness witness_from_json(const Json& j);
void save_witness(const std::string& path, const Witness& w);
Witness load_witness(const std::string& path);

/// Exact rational from "p/q", an integer, or a decimal (exact binary value).
Rational parse_rational(const std::string& text);

Report cmd_integrals(const RunConfig& cfg);
Report cmd_gform(const RunConfig& cfg);
Report cmd_scan(const RunConfig& cfg);
Report cmd_counterexample(const RunConfig& cfg);
Report cmd_small_sphere(const RunConfig& cfg);
Report cmd_certify(const RunConfig& cfg);

/// Dispatch on cfg.command. Throws std::invalid_argument for an unknown name.
Report run_command(const RunConfig& cfg);

/// Full front end. Returns 0 when every verdict passes, 1 on a mathematical
/// FAIL, 2 on a usage, configuration or I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wy::cli
