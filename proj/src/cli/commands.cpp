#include "wy/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wy/cli/parallel.hpp"
#include "wy/errors.hpp"
#include "wy/functional.hpp"
#include "wy/gform.hpp"
#include "wy/models.hpp"

namespace wy::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Grid and basis with a stable grid address (the basis keeps a pointer).
struct Workspace {
  std::unique_ptr<SphereGrid> grid;
  std::unique_ptr<HarmonicBasis> basis;

  Workspace(const RunConfig& cfg, int L) {
    grid = std::make_unique<SphereGrid>(cfg.n_theta, cfg.n_phi);
    basis = std::make_unique<HarmonicBasis>(*grid, L);
  }
};

Json triple(const std::array<double, 3>& v) { return Json::array({v[0], v[1], v[2]}); }

std::string fmt(double v) { return Json(v).dump(); }

std::string exact_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

Direction direction_from(const RunConfig& cfg, Report& rep) {
  const Direction a = Direction::normalized(cfg.a);
  double shift = 0.0;
  for (std::size_t i = 0; i < 3; ++i) shift = std::max(shift, std::abs(a[i] - cfg.a[i]));
  if (shift > 1e-14) rep.add_notice("direction a normalized to unit length");
  return a;
}

std::vector<MonomialExponents> even_triples(int max_degree) {
  std::vector<MonomialExponents> out;
  for (int p = 0; p <= max_degree; p += 2) {
    for (int q = 0; p + q <= max_degree; q += 2) {
      for (int r = 0; p + q + r <= max_degree; r += 2) out.push_back({p, q, r});
    }
  }
  return out;
}

// Smallest pencil eigenvalues for one mean-curvature field.
struct PencilPoint {
  double unrestricted = 0.0;
  double restricted = 0.0;
  int sweeps = 0;
};

PencilPoint pencil_point(const HarmonicBasis& basis, const MeanCurvatureField& h,
                         const RunConfig& cfg) {
  const HessianPencil p = assemble_pencil(basis, h);
  const PencilMinimum u = min_pencil_eigenvalue(p, false, cfg.jacobi_tol, cfg.jacobi_max_sweeps);
  const PencilMinimum r = min_pencil_eigenvalue(p, true, cfg.jacobi_tol, cfg.jacobi_max_sweeps);
  return {u.value, r.value, std::max(u.sweeps, r.sweeps)};
}

}  // namespace

// ---------------------------------------------------------------- witness

Json witness_to_json(const Witness& w) {
  Json j;
  j["schema"] = kWitnessSchema;
  j["L"] = w.L;
  Json coeffs = Json::array();
  for (int l = 0; l <= w.L; ++l) {
    for (int m = -l; m <= l; ++m) coeffs.push_back(Json::array({l, m, w.coeffs.at(l, m)}));
  }
  j["coeffs"] = std::move(coeffs);
  j["config_echo"] = w.config_echo;
  return j;
}

Witness witness_from_json(const Json& j) {
  const auto fail = [](const std::string& what) {
    throw std::invalid_argument("malformed witness: " + what);
  };
  if (!j.is_object()) fail("not an object");
  if (!j.contains("L") || !j["L"].is_number_integer()) fail("missing integer L");
  if (!j.contains("coeffs") || !j["coeffs"].is_array()) fail("missing coeffs array");
  Witness w;
  w.L = j["L"].get<int>();
  if (w.L < 0 || w.L > 200) fail("L out of range");
  w.coeffs = FieldCoeffs(w.L);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : j["coeffs"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number()) {
      fail("each coefficient must be [l, m, value]");
    }
    const int l = e[0].get<int>();
    const int m = e[1].get<int>();
    if (l < 0 || l > w.L || m < -l || m > l) fail("index (" + e[0].dump() + ", " + e[1].dump() + ") out of range");
    if (!seen.insert({l, m}).second) fail("duplicate index (" + e[0].dump() + ", " + e[1].dump() + ")");
    w.coeffs.at(l, m) = e[2].get<double>();
  }
  if (j.contains("config_echo")) w.config_echo = j["config_echo"];
  return w;
}

void save_witness(const std::string& path, const Witness& w) {
  if (path.empty()) throw std::invalid_argument("witness path is empty");
  write_text(path, witness_to_json(w).dump(2) + "\n");
}

Witness load_witness(const std::string& path) {
  const std::string text = read_text(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("cannot parse witness '" + path + "': " + e.what());
  }
  try {
    return witness_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(e.what()) + " (in '" + path + "')");
  }
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const boost::multiprecision::cpp_int num(text.substr(0, slash));
      const boost::multiprecision::cpp_int den(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    }
    if (text.find_first_of(".eE") == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(text));
    }
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  return to_rational(parse_number(text));
}

// ---------------------------------------------------------------- integrals

Report cmd_integrals(const RunConfig& cfg) {
  Report rep("integrals", config_to_json(cfg));
  const SphereGrid grid(cfg.n_theta, cfg.n_phi);
  rep.set_columns({"p", "q", "r", "exact", "quadrature", "relerr"});

  double worst = 0.0;
  Json flagged = Json::array();
  for (const auto& e : even_triples(10)) {
    const double exact = monomial_integral_value(e);
    const double quad = integrate(grid, sample_monomial(grid, e));
    const double rel = std::abs(quad - exact) / std::abs(exact);
    worst = std::max(worst, rel);
    rep.add_row({e.p, e.q, e.r, exact, quad, rel});
    if (!(rel < cfg.tol_integrals)) {
      const int degree = e.p + e.q + e.r;
      flagged.push_back({{"p", e.p},
                         {"q", e.q},
                         {"r", e.r},
                         {"degree", degree},
                         {"relerr", rel},
                         {"beyond_exactness", degree > grid.exact_degree()}});
    }
  }

  // The four tabulated closed forms, as exact multiples of 4 pi.
  Json table = Json::array();
  bool exact_ok = true;
  {
    bool family_ok = true;
    Json ks = Json::array();
    for (int k = 0; k <= 5; ++k) {
      family_ok = family_ok && monomial_integral({2 * k, 0, 0}) == Rational(1, 2 * k + 1);
      ks.push_back(k);
    }
    exact_ok = exact_ok && family_ok;
    table.push_back({{"integrand", "x1^(2k)"},
                     {"over_4pi", "1/(2k+1)"},
                     {"k_checked", ks},
                     {"exact", family_ok}});
  }
  const struct {
    const char* name;
    MonomialExponents e;
    int den;
  } rows[] = {{"x1^2 x2^2", {2, 2, 0}, 15}, {"x1^4 x2^2", {4, 2, 0}, 35}, {"x1^2 x2^2 x3^2", {2, 2, 2}, 105}};
  for (const auto& row : rows) {
    const Rational v = monomial_integral(row.e);
    const bool ok = v == Rational(1, row.den);
    exact_ok = exact_ok && ok;
    table.push_back({{"integrand", row.name},
                     {"over_4pi", exact_string(v)},
                     {"value", 4.0 * kPi / row.den},
                     {"quadrature", integrate(grid, sample_monomial(grid, row.e))},
                     {"exact", ok}});
  }

  auto& res = rep.results();
  res["exact_degree"] = grid.exact_degree();
  res["max_relerr"] = worst;
  res["closed_forms"] = std::move(table);
  res["flagged"] = std::move(flagged);
  rep.add_verdict("closed_forms_exact", exact_ok, "rational values of the tabulated integrals");
  rep.add_verdict("quadrature_agreement", worst < cfg.tol_integrals,
                  "max relative error " + fmt(worst) + " vs " + fmt(cfg.tol_integrals));
  if (worst >= cfg.tol_integrals) {
    rep.add_notice("grid is exact to degree " + std::to_string(grid.exact_degree()) +
                   "; degree-10 monomials need n_theta >= 6 and n_phi >= 11");
  }
  return rep;
}

// ---------------------------------------------------------------- gform

Report cmd_gform(const RunConfig& cfg) {
  Report rep("gform", config_to_json(cfg));
  const RicciEigs lam(cfg.lambda);
  std::vector<Direction> dirs{direction_from(cfg, rep)};
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  while (static_cast<int>(dirs.size()) < cfg.random_directions + 1) {
    const std::array<double, 3> v{n01(rng), n01(rng), n01(rng)};
    if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] > 1e-6) dirs.push_back(Direction::normalized(v));
  }
  if (cfg.L < 3) throw SizingError("gform needs ltrunc >= 3");
  const Workspace ws(cfg, cfg.L);
  const double scale = 4.0 * kPi * lam.norm_sq() / 90.0;

  // The numeric minimum depends on bbar only through an additive constant, so
  // solve once per direction.
  std::vector<double> numeric0 = parallel_map<double>(dirs.size(), cfg.threads, [&](std::size_t i) {
    return minimize_G(*ws.basis, dirs[i], lam, 0.0).value;
  });

  rep.set_columns({"bbar", "a1", "a2", "a3", "A", "D", "alpha", "beta", "gamma", "discriminant",
                   "min_closed", "min_formula", "min_numeric", "classification"});
  double worst_formula = 0.0;
  double worst_numeric = 0.0;
  bool signs_ok = true;
  Json per_bbar = Json::array();
  for (double bbar : cfg.bbar) {
    const BbarClass cls = classify_bbar(bbar);
    const double formula = 4.0 * kPi * (kThresholdBbar - bbar) * lam.norm_sq();
    bool consistent = true;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const GQuadratic q = g_quadratic(dirs[i], lam, bbar);
      const double numeric = numeric0[i] - 4.0 * kPi * bbar * lam.norm_sq();
      worst_formula = std::max(worst_formula, std::abs(q.minimum() - formula) / scale);
      worst_numeric = std::max(worst_numeric, std::abs(numeric - formula) / scale);
      switch (cls) {
        case BbarClass::Positive:
          consistent = consistent && numeric > 0.0;
          break;
        case BbarClass::Indefinite:
          consistent = consistent && numeric < 0.0;
          break;
        case BbarClass::Borderline:
          consistent = consistent && std::abs(numeric) <= cfg.tol_gform * scale;
          break;
      }
      rep.add_row({bbar, dirs[i][0], dirs[i][1], dirs[i][2], q.A, q.D, q.alpha, q.beta_coef,
                   q.gamma_coef, q.discriminant, q.minimum(), formula, numeric,
                   std::string(to_string(cls))});
    }
    signs_ok = signs_ok && consistent;
    per_bbar.push_back({{"bbar", bbar},
                        {"classification", to_string(cls)},
                        {"min_formula", formula},
                        {"sign_consistent_over_directions", consistent}});
  }
  auto& res = rep.results();
  res["lambda"] = triple(lam.values());
  res["directions"] = dirs.size();
  res["threshold"] = kThresholdBbar;
  res["per_bbar"] = std::move(per_bbar);
  res["max_formula_error"] = worst_formula;
  res["max_numeric_error"] = worst_numeric;
  res["error_scale"] = scale;
  rep.add_verdict("closed_form_minimum", worst_formula <= cfg.tol_gform,
                  "max |(alpha gamma - beta^2)/gamma - 4pi(1/90-bbar)|lambda|^2| / scale = " +
                      fmt(worst_formula));
  rep.add_verdict("numeric_minimum", worst_numeric <= cfg.tol_gform,
                  "max |min_numeric - formula| / scale = " + fmt(worst_numeric));
  rep.add_verdict("classification_direction_independent", signs_ok,
                  "sign of the numeric minimum matches the bbar class in every row");
  return rep;
}

// ---------------------------------------------------------------- scan

Report cmd_scan(const RunConfig& cfg) {
  Report rep("scan", config_to_json(cfg));
  const RicciEigs lam(cfg.lambda);
  const Workspace ws(cfg, cfg.L);
  const double rmax = rmax_section6(lam);

  struct Point {
    double bbar;
    double r;
  };
  std::vector<Point> points;
  for (double bbar : cfg.bbar) {
    for (double r : cfg.r) {
      if (r > rmax) {
        rep.add_notice("skipped bbar=" + fmt(bbar) + " r=" + fmt(r) + ": beyond positivity radius " +
                       fmt(rmax));
        continue;
      }
      points.push_back({bbar, r});
    }
  }
  struct Row {
    PencilPoint pencil;
    double deficit;
  };
  const auto rows = parallel_map<Row>(points.size(), cfg.threads, [&](std::size_t i) {
    const MeanCurvatureField h = h_section6(*ws.grid, lam, points[i].bbar, points[i].r);
    return Row{pencil_point(*ws.basis, h, cfg), integrate(*ws.grid, h.deficit())};
  });

  rep.set_columns({"bbar", "r", "min_unrestricted", "min_restricted", "m_over_r4", "deficit",
                   "deficit_closed", "classification", "sweeps"});
  bool deficit_positive = true;
  bool deficit_closed_ok = true;
  bool signs_ok = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [bbar, r] = points[i];
    const Row& row = rows[i];
    const double r4 = r * r * r * r;
    const double closed = by_deficit_closed(lam, bbar, r);
    const BbarClass cls = classify_bbar(bbar);
    if (bbar < 1.0 / 30.0) deficit_positive = deficit_positive && row.deficit > 0.0;
    deficit_closed_ok = deficit_closed_ok &&
                        std::abs(row.deficit - closed) <= cfg.tol_deficit;
    if (cls == BbarClass::Positive) signs_ok = signs_ok && row.pencil.unrestricted > 0.0;
    if (cls == BbarClass::Indefinite) signs_ok = signs_ok && row.pencil.unrestricted < 0.0;
    rep.add_row({bbar, r, row.pencil.unrestricted, row.pencil.restricted,
                 row.pencil.unrestricted / r4, row.deficit, closed, std::string(to_string(cls)),
                 row.pencil.sweeps});
  }

  // Bisection on bbar for the sign flip of the smallest eigenvalue at fixed r.
  auto& res = rep.results();
  res["lambda"] = triple(lam.values());
  res["rmax"] = rmax;
  if (cfg.bisect_r > rmax) throw DomainError("bisect_r exceeds the positivity radius " + fmt(rmax));
  const auto m_at = [&](double bbar) {
    return pencil_point(*ws.basis, h_section6(*ws.grid, lam, bbar, cfg.bisect_r), cfg).unrestricted;
  };
  double lo = cfg.bisect_lo;
  double hi = cfg.bisect_hi;
  const double m_lo = m_at(lo);
  const double m_hi = m_at(hi);
  Json bracket;
  bracket["r"] = cfg.bisect_r;
  bracket["m_lo"] = m_lo;
  bracket["m_hi"] = m_hi;
  if (m_lo > 0.0 && m_hi < 0.0) {
    int steps = 0;
    while (hi - lo >= cfg.bracket_width) {
      const double mid = 0.5 * (lo + hi);
      (m_at(mid) > 0.0 ? lo : hi) = mid;
      ++steps;
    }
    const bool contains = lo <= kThresholdBbar && kThresholdBbar <= hi;
    bracket["lo"] = lo;
    bracket["hi"] = hi;
    bracket["width"] = hi - lo;
    bracket["estimate"] = 0.5 * (lo + hi);
    bracket["steps"] = steps;
    bracket["contains_threshold"] = contains;
    rep.add_verdict("threshold_bracket", contains && hi - lo < 1.0 / 450.0,
                    "[" + fmt(lo) + ", " + fmt(hi) + "] vs 1/90");
  } else {
    bracket["lo"] = lo;
    bracket["hi"] = hi;
    bracket["contains_threshold"] = false;
    rep.add_verdict("threshold_bracket", false,
                    "no sign change of the smallest eigenvalue between bisect_lo and bisect_hi");
  }
  res["bracket"] = std::move(bracket);
  rep.add_verdict("deficit_positive", deficit_positive, "integral of 2 - H > 0 for bbar < 1/30");
  rep.add_verdict("deficit_closed_form", deficit_closed_ok,
                  "integral of 2 - H = 4 pi r^4 (1/30 - bbar) |lambda|^2 to tol_deficit");
  rep.add_verdict("sign_matches_classification", signs_ok,
                  "smallest eigenvalue positive below 1/90 and negative above");
  return rep;
}

// ---------------------------------------------------------------- counterexample

Report cmd_counterexample(const RunConfig& cfg) {
  Report rep("counterexample", config_to_json(cfg));
  const RicciEigs lam(cfg.lambda);
  const double bbar = cfg.bbar.front();
  const double r = cfg.r.front();
  const double r4 = r * r * r * r;
  auto& res = rep.results();

  if (!cfg.witness_in.empty()) {
    const Witness w = load_witness(cfg.witness_in);
    const Workspace ws(cfg, w.L);
    const MeanCurvatureField h = h_section6(*ws.grid, lam, bbar, r);
    const double F = eval_F(*ws.basis, h, w.coeffs);
    res["source"] = cfg.witness_in;
    res["L"] = w.L;
    res["F_value"] = F;
    res["F_over_r4"] = F / r4;
    rep.set_columns({"l", "m", "value"});
    for (int l = 0; l <= w.L; ++l) {
      for (int m = -l; m <= l; ++m) rep.add_row({l, m, w.coeffs.at(l, m)});
    }
    rep.add_verdict("F_negative", F < 0.0, "F = " + fmt(F));
    return rep;
  }

  if (cfg.L < 3) throw SizingError("counterexample needs ltrunc >= 3");
  const Direction a = direction_from(cfg, rep);
  const Workspace ws(cfg, cfg.L);
  const NegativeDirection nd = negative_direction_section6(*ws.basis, lam, bbar, r, a);
  const MeanCurvatureField h = h_section6(*ws.grid, lam, bbar, r);
  const double deficit = integrate(*ws.grid, h.deficit());
  const double deficit_closed = by_deficit_closed(lam, bbar, r);
  if (nd.warning) rep.add_notice(nd.warning_text);

  Witness w{cfg.L, nd.eta, config_to_json(cfg)};
  const Json wj = witness_to_json(w);
  Witness back;
  if (!cfg.witness.empty()) {
    save_witness(cfg.witness, w);
    back = load_witness(cfg.witness);
  } else {
    back = witness_from_json(Json::parse(wj.dump()));
  }
  const double F_back = eval_F(*ws.basis, h, back.coeffs);
  const double rel = std::abs(nd.F_value - nd.predicted) / std::abs(nd.predicted);

  res["lambda"] = triple(lam.values());
  res["a"] = triple(a.values());
  res["F_value"] = nd.F_value;
  res["predicted"] = nd.predicted;
  res["F_over_r4"] = nd.F_value / r4;
  res["predicted_over_r4"] = nd.predicted / r4;
  res["relative_error"] = number(rel);
  res["deficit"] = deficit;
  res["deficit_closed"] = deficit_closed;
  res["warning"] = nd.warning;
  res["reloaded_F_value"] = F_back;
  res["witness_path"] = cfg.witness;
  res["witness"] = wj;

  rep.set_columns({"l", "m", "value"});
  for (int l = 0; l <= w.L; ++l) {
    for (int m = -l; m <= l; ++m) rep.add_row({l, m, w.coeffs.at(l, m)});
  }
  rep.add_verdict("F_negative", nd.F_value < 0.0, "F = " + fmt(nd.F_value));
  rep.add_verdict("matches_prediction", rel < cfg.tol_prediction,
                  "relative error " + fmt(rel) + " vs " + fmt(cfg.tol_prediction));
  rep.add_verdict("deficit_closed_form",
                  std::abs(deficit - deficit_closed) <= cfg.tol_deficit,
                  "integral " + fmt(deficit) + " vs " + fmt(deficit_closed));
  rep.add_verdict("witness_roundtrip",
                  std::abs(F_back - nd.F_value) <= cfg.tol_roundtrip * std::abs(nd.F_value),
                  "reloaded F = " + fmt(F_back));
  return rep;
}

// ---------------------------------------------------------------- small-sphere

Report cmd_small_sphere(const RunConfig& cfg) {
  Report rep("small-sphere", config_to_json(cfg));
  CurvatureData cd;
  cd.R = cfg.R;
  cd.ric_sq = cfg.ric_sq;
  cd.lapR = cfg.lapR;
  cd.synthetic = cfg.synthetic;
  cd.validate();
  if (cfg.expect_case == "CASE_II" && !(cd.ric_sq > 0.0)) {
    throw std::invalid_argument("case II requested but |Ric|^2 = 0");
  }

  rep.set_columns({"r", "m_expansion", "m_over_r3", "m_over_r5"});
  for (double r : cfg.r) {
    const double m = by_expansion_small_sphere(cd, r);
    rep.add_row({r, m, m / (r * r * r), m / (r * r * r * r * r)});
  }
  auto& res = rep.results();
  res["coefficients"] = {{"r3", "R/12"}, {"r5", "(24|Ric|^2 - 13R^2 + 12 lapR)/1440"}};
  res["r3_coefficient"] = cd.R / 12.0;
  res["r5_coefficient"] = (24.0 * cd.ric_sq - 13.0 * cd.R * cd.R + 12.0 * cd.lapR) / 1440.0;

  if (cd.synthetic) {
    rep.add_notice("synthetic curvature data: case classification skipped");
    res["case"] = nullptr;
  } else {
    const SmallSphereCase c = classify_small_sphere(cd);
    res["case"] = to_string(c);
    const double rmin = *std::min_element(cfg.r.begin(), cfg.r.end());
    if (c == SmallSphereCase::Degenerate) {
      res["note"] = "R, |Ric|^2 and lapR vanish: the limit of r^-5 m is not positive";
      rep.add_verdict("leading_order_positive", false, "degenerate curvature data");
    } else {
      rep.add_verdict("leading_order_positive", by_expansion_small_sphere(cd, rmin) > 0.0,
                      "m at r = " + fmt(rmin));
    }
    if (!cfg.expect_case.empty()) {
      rep.add_verdict("expected_case", cfg.expect_case == to_string(c),
                      "expected " + cfg.expect_case);
    }
  }
  if (cd.ric_sq > 0.0) {
    const double bbar = bbar_from_b(cfg.b, cd);
    const BbarClass cls = classify_bbar(bbar);
    res["bbar"] = bbar;
    res["bbar_class"] = to_string(cls);
    const bool case_ii = !cd.synthetic && classify_small_sphere(cd) == SmallSphereCase::CaseII;
    if (case_ii || cd.synthetic) {
      if (cls == BbarClass::Borderline) {
        rep.add_skip("second_variation_positive", "bbar at the threshold 1/90");
      } else {
        rep.add_verdict("second_variation_positive", cls == BbarClass::Positive,
                        "bbar = " + fmt(bbar) + " vs 1/90");
      }
    }
  } else {
    res["bbar"] = nullptr;
    res["bbar_class"] = nullptr;
  }
  return rep;
}

// ---------------------------------------------------------------- certify

Report cmd_certify(const RunConfig& cfg) {
  Report rep("certify", config_to_json(cfg));
  const Workspace ws(cfg, cfg.L);
  const SphereGrid& grid = *ws.grid;

  std::optional<MeanCurvatureField> h;
  if (cfg.family == "constant") {
    h = MeanCurvatureField::from_deficit(
        grid, std::vector<double>(grid.size(), cfg.epsilon), "constant");
  } else if (cfg.family == "section6") {
    h = h_section6(grid, RicciEigs(cfg.lambda), cfg.bbar.front(), cfg.r.front());
  } else if (cfg.family == "random") {
    // deficit = epsilon (1 + psi / 2) with psi a seeded field of degrees 1..4, |psi| <= 1
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> n01(0.0, 1.0);
    FieldCoeffs c(std::min(4, cfg.L));
    for (int l = 1; l <= c.L; ++l) {
      for (int m = -l; m <= l; ++m) c.at(l, m) = n01(rng);
    }
    std::vector<double> psi = synthesize(*ws.basis, c);
    double mx = 0.0;
    for (double v : psi) mx = std::max(mx, std::abs(v));
    for (double& v : psi) v = cfg.epsilon * (1.0 + 0.5 * v / std::max(mx, 1e-300));
    h = MeanCurvatureField::from_deficit(grid, std::move(psi), "random");
  } else {
    throw std::invalid_argument("unknown H family '" + cfg.family + "'");
  }

  const Rational beta = parse_rational(cfg.cert_beta);
  const Rational lambda1 = parse_rational(cfg.cert_lambda1);
  const Rational alpha = parse_rational(cfg.cert_alpha);
  const Rational inf_h0 = parse_rational(cfg.cert_inf_h0);
  const Rational sup_h0 = parse_rational(cfg.cert_sup_h0);
  const Certificate c31 = cert_prop31(beta, lambda1, alpha, inf_h0);
  const Certificate c33 = cert_prop33(beta, lambda1, alpha, inf_h0, sup_h0);
  const ConditionReport k31 = check_conditions_prop31(grid, *h, c31);
  const ConditionReport33 k33 = check_conditions_prop33(grid, *h, c33);

  const PencilPoint p = pencil_point(*ws.basis, *h, cfg);
  const PencilPoint ref = pencil_point(*ws.basis, MeanCurvatureField::constant(grid, 2.0), cfg);

  auto& res = rep.results();
  res["family"] = cfg.family;
  res["inf_H"] = h->inf_h();
  res["sup_H"] = h->sup_h();
  res["certificate_31"] = {{"delta", exact_string(c31.delta)}, {"delta_value", c31.delta_value()}};
  res["certificate_33"] = {{"theta", exact_string(*c33.theta)},
                           {"theta_value", c33.theta_value()},
                           {"delta", exact_string(c33.delta)},
                           {"delta_value", c33.delta_value()}};
  res["conditions_31"] = {{"a", k31.cond_a},
                          {"b1", k31.cond_b1},
                          {"b2", k31.cond_b2},
                          {"deficit", k31.deficit},
                          {"negative_sup", k31.negative_sup},
                          {"ratio", number(k31.ratio)},
                          {"margin_a", k31.margin_a},
                          {"margin_b1", k31.margin_b1},
                          {"margin_b2", number(k31.margin_b2)}};
  res["conditions_33"] = {{"i", k33.cond_i},
                          {"ii", k33.cond_ii},
                          {"lhs_i", k33.lhs_i},
                          {"negative_sup", k33.negative_sup},
                          {"margin_ii", k33.margin_ii}};
  res["pencil"] = {{"min_unrestricted", p.unrestricted},
                   {"min_restricted", p.restricted},
                   {"sweeps", p.sweeps}};
  // The coercivity constant of the round sphere, computed on this basis.
  res["beta_computed"] = ref.restricted;

  rep.set_columns({"condition", "holds", "margin"});
  rep.add_row({"31.a", k31.cond_a, k31.margin_a});
  rep.add_row({"31.b1", k31.cond_b1, k31.margin_b1});
  rep.add_row({"31.b2", k31.cond_b2, number(k31.margin_b2)});
  rep.add_row({"33.i", k33.cond_i, k33.lhs_i});
  rep.add_row({"33.ii", k33.cond_ii, k33.margin_ii});

  rep.add_verdict("prop31_conditions", k31.all(),
                  std::string("a=") + (k31.cond_a ? "PASS" : "FAIL") +
                      " b1=" + (k31.cond_b1 ? "PASS" : "FAIL") +
                      " b2=" + (k31.cond_b2 ? "PASS" : "FAIL"));
  rep.add_verdict("prop33_conditions", k33.all(),
                  std::string("i=") + (k33.cond_i ? "PASS" : "FAIL") +
                      " ii=" + (k33.cond_ii ? "PASS" : "FAIL"));
  const bool pencil_positive = p.unrestricted > 0.0;
  rep.add_verdict("pencil_positive", pencil_positive,
                  "smallest eigenvalue " + fmt(p.unrestricted));
  const bool certified = k31.all() || k33.all();
  rep.add_verdict("certificate_consistent", !certified || pencil_positive,
                  certified ? "certificate holds, pencil must be positive"
                            : "no certificate holds; nothing to cross-check");
  if (certified && !pencil_positive) {
    rep.add_notice("certificate conditions hold but the pencil is not positive");
  }
  return rep;
}

// ---------------------------------------------------------------- dispatch

Report run_command(const RunConfig& cfg) {
  if (cfg.command == "integrals") return cmd_integrals(cfg);
  if (cfg.command == "gform") return cmd_gform(cfg);
  if (cfg.command == "scan") return cmd_scan(cfg);
  if (cfg.command == "counterexample") return cmd_counterexample(cfg);
  if (cfg.command == "small-sphere") return cmd_small_sphere(cfg);
  if (cfg.command == "certify") return cmd_certify(cfg);
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ParseOutcome parsed = parse_command_line(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? out : err) << parsed.message;
    return parsed.exit_code;
  }
  const RunConfig& cfg = *parsed.config;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    Report rep = run_command(cfg);
    rep.add_timing("total_seconds",
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    const std::string text = rep.render(cfg.format, cfg.timings);
    if (cfg.out.empty()) {
      out << text;
    } else {
      write_text(cfg.out, text);
    }
    for (const auto& v : rep.verdicts()) {
      if (v.status == Status::Fail) err << "FAIL " << v.name << ": " << v.detail << '\n';
    }
    return rep.exit_code();
  } catch (const EigenNonConvergence& e) {
    err << "wy-stability: " << e.what() << '\n';
    return 1;
  } catch (const InternalInconsistency& e) {
    err << "wy-stability: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "wy-stability: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace wy::cli
