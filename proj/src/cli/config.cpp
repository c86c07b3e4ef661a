#include "wy/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"

namespace wy::cli {

namespace {

double parse_decimal(const std::string& text) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  while (last != first && last[-1] == ' ') --last;
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

std::array<double, 3> parse_triple(const std::vector<std::string>& items, const char* key) {
  if (items.size() != 3) {
    throw std::invalid_argument(std::string(key) + " needs exactly 3 values, got " +
                                std::to_string(items.size()));
  }
  return {parse_number(items[0]), parse_number(items[1]), parse_number(items[2])};
}

std::vector<double> parse_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  out.reserve(items.size());
  for (const auto& s : items) out.push_back(parse_number(s));
  return out;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw std::invalid_argument("grid must look like TxP, got " + text);
  int t = 0;
  int p = 0;
  const auto r1 = std::from_chars(text.data(), text.data() + x, t);
  const auto r2 = std::from_chars(text.data() + x + 1, text.data() + text.size(), p);
  if (r1.ec != std::errc() || r1.ptr != text.data() + x || r2.ec != std::errc() ||
      r2.ptr != text.data() + text.size()) {
    throw std::invalid_argument("grid must look like TxP, got " + text);
  }
  return {t, p};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

double parse_number(const std::string& text) {
  const auto slash = text.find('/');
  double v = 0.0;
  if (slash == std::string::npos) {
    v = parse_decimal(text);
  } else {
    const double num = parse_decimal(text.substr(0, slash));
    const double den = parse_decimal(text.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in '" + text + "'");
    v = num / den;
  }
  if (!std::isfinite(v)) throw std::invalid_argument("not a finite number: '" + text + "'");
  return v;
}

const char* to_string(OutputFormat f) noexcept { return f == OutputFormat::Json ? "json" : "csv"; }

ParseOutcome parse_command_line(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Second-variation stability checks on the unit round sphere", "wy-stability"};
  app.set_config("--config", "", "key=value file; command-line options override it");
  app.get_config_ptr()->check(CLI::ExistingFile);

  std::string grid = "32x64";
  std::string format = "json";
  std::vector<std::string> lambda{"1", "1", "-2"};
  std::vector<std::string> a{"0", "0", "1"};
  std::vector<std::string> bbar;
  std::vector<std::string> r;
  std::vector<std::pair<std::string, double*>> scalars{
      {"bisect_r", &cfg.bisect_r},       {"bisect_lo", &cfg.bisect_lo},
      {"bisect_hi", &cfg.bisect_hi},     {"bracket_width", &cfg.bracket_width},
      {"R", &cfg.R},                     {"ric_sq", &cfg.ric_sq},
      {"lapR", &cfg.lapR},               {"b", &cfg.b},
      {"epsilon", &cfg.epsilon},         {"tol_integrals", &cfg.tol_integrals},
      {"tol_gform", &cfg.tol_gform},     {"tol_prediction", &cfg.tol_prediction},
      {"tol_roundtrip", &cfg.tol_roundtrip}, {"tol_deficit", &cfg.tol_deficit},
      {"jacobi_tol", &cfg.jacobi_tol}};
  std::vector<std::string> scalar_text(scalars.size());

  app.add_option("command", cfg.command, "what to run")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--grid", grid, "quadrature grid n_theta x n_phi")->capture_default_str();
  app.add_option("--ltrunc", cfg.L, "harmonic degree cap L")->capture_default_str();
  app.add_option("--out", cfg.out, "report path (stdout when absent)");
  app.add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized inputs")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads for scans (0 = auto)");
  app.add_flag("--timings", cfg.timings, "append wall-clock timings (breaks byte identity)");
  app.add_option("--lambda", lambda, "trace-free Ricci eigenvalues")->delimiter(',');
  app.add_option("--a", a, "unit direction of the degree-one part")->delimiter(',');
  app.add_option("--bbar", bbar, "list of shifted parameters")->delimiter(',');
  app.add_option("--r", r, "list of radii")->delimiter(',');
  app.add_option("--random_directions", cfg.random_directions, "extra random directions (gform)");
  app.add_option("--witness", cfg.witness, "write the counterexample witness to this path");
  app.add_option("--witness_in", cfg.witness_in, "re-evaluate a stored witness");
  app.add_flag("--synthetic", cfg.synthetic, "allow lapR < 0 at R = 0");
  app.add_option("--expect_case", cfg.expect_case, "expected small-sphere case")
      ->check(CLI::IsMember({"CASE_I", "CASE_II", "CASE_III", "DEGENERATE"}));
  app.add_option("--family", cfg.family, "H family for certify")
      ->check(CLI::IsMember({"constant", "section6", "random"}));
  app.add_option("--cert_beta", cfg.cert_beta);
  app.add_option("--cert_lambda1", cfg.cert_lambda1);
  app.add_option("--cert_alpha", cfg.cert_alpha);
  app.add_option("--cert_inf_h0", cfg.cert_inf_h0);
  app.add_option("--cert_sup_h0", cfg.cert_sup_h0);
  app.add_option("--jacobi_max_sweeps", cfg.jacobi_max_sweeps);
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    app.add_option("--" + scalars[i].first, scalar_text[i]);
  }

  std::ostringstream out;
  std::ostringstream err;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    ParseOutcome o;
    o.exit_code = code == 0 ? 0 : 2;
    o.message = out.str() + err.str();
    return o;
  }

  try {
    std::tie(cfg.n_theta, cfg.n_phi) = parse_grid(grid);
    cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    cfg.lambda = parse_triple(lambda, "lambda");
    cfg.a = parse_triple(a, "a");
    cfg.bbar = parse_list(bbar);
    cfg.r = parse_list(r);
    for (std::size_t i = 0; i < scalars.size(); ++i) {
      if (!scalar_text[i].empty()) *scalars[i].second = parse_number(scalar_text[i]);
    }
    if (auto* opt = app.get_option_no_throw("--config"); opt && opt->count() > 0) {
      cfg.config_file = opt->as<std::string>();
    }
    resolve_defaults(cfg);
  } catch (const std::invalid_argument& e) {
    ParseOutcome o;
    o.exit_code = 2;
    o.message = std::string("wy-stability: ") + e.what() + "\n";
    return o;
  }
  ParseOutcome o;
  o.config = std::move(cfg);
  return o;
}

void resolve_defaults(RunConfig& cfg) {
  if (cfg.bbar.empty()) {
    if (cfg.command == "gform") {
      cfg.bbar = {0.0, 1.0 / 90.0, 1.0 / 30.0};
    } else if (cfg.command == "scan") {
      cfg.bbar = {1.0 / 90.0 - 1.0 / 900.0, 1.0 / 90.0 + 1.0 / 900.0};
    } else if (cfg.command == "certify") {
      cfg.bbar = {1.0 / 180.0};
    } else {
      cfg.bbar = {1.0 / 30.0};
    }
  }
  if (cfg.r.empty()) {
    if (cfg.command == "scan" || cfg.command == "small-sphere") {
      cfg.r = {1e-1, 1e-2, 1e-3};
    } else if (cfg.command == "certify") {
      cfg.r = {0.2};
    } else {
      cfg.r = {1e-2};
    }
  }
  require(cfg.n_theta >= 2 && cfg.n_phi >= 4, "grid needs n_theta >= 2 and n_phi >= 4");
  require(cfg.L >= 0, "ltrunc must be nonnegative");
  require(cfg.threads >= 0, "threads must be nonnegative");
  require(cfg.random_directions >= 0, "random_directions must be nonnegative");
  require(cfg.bisect_lo < cfg.bisect_hi, "bisect_lo must be below bisect_hi");
  require(cfg.bracket_width > 0.0, "bracket_width must be positive");
  require(cfg.bisect_r > 0.0, "bisect_r must be positive");
  require(cfg.epsilon < 2.0, "epsilon must be below 2 so that H stays positive");
  require(cfg.jacobi_tol > 0.0 && cfg.jacobi_max_sweeps > 0, "bad Jacobi settings");
  for (double v : cfg.r) require(v > 0.0, "every r must be positive");
  const bool needs_bbar = cfg.command == "gform" || cfg.command == "scan" ||
                          cfg.command == "counterexample" ||
                          (cfg.command == "certify" && cfg.family == "section6");
  if (needs_bbar) require(!cfg.bbar.empty(), "bbar list is empty");
  if (cfg.command == "counterexample" || cfg.command == "certify") {
    require(cfg.bbar.size() == 1, cfg.command + " takes a single bbar");
    require(cfg.r.size() == 1, cfg.command + " takes a single r");
  }
}

Json config_to_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["config_file"] = cfg.config_file;
  j["grid"] = {cfg.n_theta, cfg.n_phi};
  j["ltrunc"] = cfg.L;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out;
  j["format"] = to_string(cfg.format);
  j["threads"] = cfg.threads;
  j["lambda"] = cfg.lambda;
  j["a"] = cfg.a;
  j["bbar"] = cfg.bbar;
  j["r"] = cfg.r;
  j["random_directions"] = cfg.random_directions;
  j["bisect_r"] = cfg.bisect_r;
  j["bisect_lo"] = cfg.bisect_lo;
  j["bisect_hi"] = cfg.bisect_hi;
  j["bracket_width"] = cfg.bracket_width;
  j["witness"] = cfg.witness;
  j["witness_in"] = cfg.witness_in;
  j["R"] = cfg.R;
  j["ric_sq"] = cfg.ric_sq;
  j["lapR"] = cfg.lapR;
  j["b"] = cfg.b;
  j["synthetic"] = cfg.synthetic;
  j["expect_case"] = cfg.expect_case;
  j["family"] = cfg.family;
  j["epsilon"] = cfg.epsilon;
  j["cert_beta"] = cfg.cert_beta;
  j["cert_lambda1"] = cfg.cert_lambda1;
  j["cert_alpha"] = cfg.cert_alpha;
  j["cert_inf_h0"] = cfg.cert_inf_h0;
  j["cert_sup_h0"] = cfg.cert_sup_h0;
  j["tol_integrals"] = cfg.tol_integrals;
  j["tol_gform"] = cfg.tol_gform;
  j["tol_prediction"] = cfg.tol_prediction;
  j["tol_roundtrip"] = cfg.tol_roundtrip;
  j["tol_deficit"] = cfg.tol_deficit;
  j["jacobi_tol"] = cfg.jacobi_tol;
  j["jacobi_max_sweeps"] = cfg.jacobi_max_sweeps;
  return j;
}

}  // namespace wy::cli
