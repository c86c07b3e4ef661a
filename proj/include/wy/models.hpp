#pragma once

// Concrete mean-curvature families on the round sphere, the small geodesic
// sphere expansion and classifier, and explicit positivity certificates.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "wy/functional.hpp"
#include "wy/gform.hpp"
#include "wy/harmonics.hpp"
#include "wy/quad.hpp"

namespace wy {

/// Curvature of the ambient manifold at the center of a small geodesic sphere.
struct CurvatureData {
  double R = 0.0;       // scalar curvature
  double ric_sq = 0.0;  // |Ric|^2
  double lapR = 0.0;    // Laplacian of R
  std::optional<RicciEigs> lambda;
  /// Synthetic data may have lapR < 0 at R = 0 (used to exercise the bbar shift).
  bool synthetic = false;

  /// Throws DomainError on R < 0, ric_sq < 0, lapR < 0 at R = 0 (unless
  /// synthetic) or a lambda whose squared norm disagrees with ric_sq.
  void validate() const;
};

/// H = 2 + r^2 phi - (1/30 - bbar) r^4 |lambda|^2, stored via its deficit.
/// Throws DomainError for r <= 0, r > rmax_section6(lam) or a nonpositive sample.
MeanCurvatureField h_section6(const SphereGrid& grid, const RicciEigs& lam, double bbar, double r);

/// Largest r with 2 - r^2 sum|lambda_i| - r^4 |lambda|^2 / 45 > 0, less a 1e-6 margin.
double rmax_section6(const RicciEigs& lam);

/// 4 pi r^4 (1/30 - bbar) |lambda|^2.
double by_deficit_closed(const RicciEigs& lam, double bbar, double r);

/// r^3 R / 12 + r^5 (24 |Ric|^2 - 13 R^2 + 12 Delta R) / 1440; the O(r^6)
/// remainder is not included.
double by_expansion_small_sphere(const CurvatureData& cd, double r);

enum class SmallSphereCase { CaseI, CaseII, CaseIII, Degenerate };

SmallSphereCase classify_small_sphere(const CurvatureData& cd);
std::string_view to_string(SmallSphereCase c) noexcept;

/// b - (1/60) lapR / |Ric|^2. Throws DomainError when ric_sq = 0.
double bbar_from_b(double b, const CurvatureData& cd);

/// Constants of a positivity certificate. Exact rationals when built from
/// rational inputs; the double view is for evaluating conditions.
struct Certificate {
  Rational beta;
  Rational lambda1;
  Rational alpha;
  Rational inf_H0;
  Rational sup_H0;
  Rational delta;
  std::optional<Rational> theta;

  double delta_value() const { return static_cast<double>(delta); }
  double theta_value() const { return theta ? static_cast<double>(*theta) : 0.0; }
};

/// theta = (beta/2) / (1/alpha1 + sup_H0 / lambda1 + beta/2), alpha1 = min(alpha, inf_H0);
/// delta = (beta/4) / (1/(alpha inf_H0) + 1/lambda1).
Certificate cert_prop33(const Rational& beta, const Rational& lambda1, const Rational& alpha,
                        const Rational& inf_H0, const Rational& sup_H0);

/// delta = min( (1/2) / (1/(eps1 alpha^2) + 1/eps2), (beta/4) / (1/(alpha inf_H0) + 1/lambda1) )
/// with eps1 = beta/4 and eps2 = lambda1 beta / 4.
Certificate cert_prop31(const Rational& beta, const Rational& lambda1, const Rational& alpha,
                        const Rational& inf_H0);

/// The exact rational value of a finite double.
Rational to_rational(double v);

struct ConditionReport {
  bool cond_a = false;   // int (2 - H) > 0
  bool cond_b1 = false;  // sup |(2 - H)_-| < delta
  bool cond_b2 = false;  // int (2 - H)^2 / int (2 - H) < delta
  double deficit = 0.0;
  double negative_sup = 0.0;
  double ratio = 0.0;
  double margin_a = 0.0;
  double margin_b1 = 0.0;
  double margin_b2 = 0.0;

  bool all() const noexcept { return cond_a && cond_b1 && cond_b2; }
};

ConditionReport check_conditions_prop31(const SphereGrid& grid, const MeanCurvatureField& h,
                                        const Certificate& cert);

struct ConditionReport33 {
  bool cond_i = false;   // theta int (2 - H) + 2 int (2 - H)_- > 0
  bool cond_ii = false;  // sup |(2 - H)_-| < delta
  double lhs_i = 0.0;
  double negative_sup = 0.0;
  double margin_ii = 0.0;

  bool all() const noexcept { return cond_i && cond_ii; }
};

ConditionReport33 check_conditions_prop33(const SphereGrid& grid, const MeanCurvatureField& h,
                                          const Certificate& cert);

struct NegativeDirection {
  FieldCoeffs eta;
  double F_value = 0.0;
  /// r^4 * 4 pi (1/90 - bbar) |lambda|^2.
  double predicted = 0.0;
  bool warning = false;
  std::string warning_text;
};

/// eta = <a, x> + r^2 (phi eta1 - xi) / 6 evaluated in F for H = h_section6(lam, bbar, r).
/// Outside bbar in (1/90, 1/30], or when F turns out nonnegative, the witness is
/// still returned with the warning flag set.
NegativeDirection negative_direction_section6(const HarmonicBasis& basis, const RicciEigs& lam,
                                              double bbar, double r, const Direction& a);

}  // namespace wy
