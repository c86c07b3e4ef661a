#pragma once

// Run configuration for the wy-stability front end: a key=value file plus
// command-line overrides. Every key is also a long option of the same name.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace wy::cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::string command;
  std::string config_file;

  int n_theta = 32;
  int n_phi = 64;
  int L = 8;
  std::uint64_t seed = 20261015;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::Json;
  int threads = 0;  // 0: hardware concurrency
  bool timings = false;

  std::array<double, 3> lambda{1.0, 1.0, -2.0};
  std::array<double, 3> a{0.0, 0.0, 1.0};
  std::vector<double> bbar;  // resolved per command when left empty
  std::vector<double> r;
  int random_directions = 10;

  // scan: bisection for the sign flip of the smallest pencil eigenvalue
  double bisect_r = 1e-2;
  double bisect_lo = 0.0;
  double bisect_hi = 1.0 / 30.0;
  double bracket_width = 1.0 / 900.0;

  // counterexample
  std::string witness;     // write the witness here when set
  std::string witness_in;  // evaluate a stored witness instead of building one

  // small-sphere
  double R = 0.0;
  double ric_sq = 6.0;
  double lapR = 0.0;
  double b = 0.0;
  bool synthetic = false;
  std::string expect_case;  // CASE_I | CASE_II | CASE_III | DEGENERATE

  // certify
  std::string family = "constant";  // constant | section6 | random
  double epsilon = 0.01;
  std::string cert_beta = "1/3";
  std::string cert_lambda1 = "2";
  std::string cert_alpha = "2";
  std::string cert_inf_h0 = "2";
  std::string cert_sup_h0 = "2";

  // tolerances
  double tol_integrals = 1e-11;
  double tol_gform = 1e-6;
  double tol_prediction = 0.05;
  double tol_deficit = 1e-10;  // absolute
  double tol_roundtrip = 1e-12;
  double jacobi_tol = 1e-12;
  int jacobi_max_sweeps = 100;
};

/// Outcome of parsing argv: either a config to run or an exit code to return
/// immediately (help output, usage errors).
struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = 0;
  std::string message;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"integrals", "gform",        "scan",
                                              "counterexample", "small-sphere", "certify"};
  return names;
}

ParseOutcome parse_command_line(int argc, const char* const* argv);

/// Fills command-dependent defaults (bbar and r lists) and validates ranges.
/// Throws std::invalid_argument on a bad value.
void resolve_defaults(RunConfig& cfg);

/// Accepts decimal numbers and fractions "p/q".
double parse_number(const std::string& text);

/// Every key with its effective value.
Json config_to_json(const RunConfig& cfg);

const char* to_string(OutputFormat f) noexcept;

}  // namespace wy::cli
