#include "wy/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wy/errors.hpp"

namespace wy {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void CurvatureData::validate() const {
  if (!(R >= 0.0)) throw DomainError("scalar curvature must be nonnegative");
  if (!(ric_sq >= 0.0)) throw DomainError("|Ric|^2 must be nonnegative");
  if (R == 0.0 && lapR < 0.0 && !synthetic) {
    throw DomainError("Delta R must be nonnegative where R = 0 attains its minimum");
  }
  if (lambda) {
    const double n = lambda->norm_sq();
    if (std::abs(n - ric_sq) > 1e-12 * std::max(1.0, ric_sq)) {
      throw DomainError("lambda has squared norm " + std::to_string(n) + " but |Ric|^2 = " +
                        std::to_string(ric_sq));
    }
  }
}

double rmax_section6(const RicciEigs& lam) {
  const double s1 = lam.abs_sum();
  const double s2 = lam.norm_sq();
  const auto f = [s1, s2](double r) { return 2.0 - r * r * s1 - r * r * r * r * s2 / 45.0; };
  double lo = 0.0;
  double hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return lo - 1e-6;
}

MeanCurvatureField h_section6(const SphereGrid& grid, const RicciEigs& lam, double bbar,
                              double r) {
  if (!(r > 0.0)) throw DomainError("radius parameter r must be positive");
  const double rmax = rmax_section6(lam);
  if (r > rmax) {
    throw DomainError("r = " + std::to_string(r) + " exceeds the positivity radius " +
                      std::to_string(rmax));
  }
  const std::vector<double> phi = phi_field(lam, grid);
  const double r2 = r * r;
  const double shift = (1.0 / 30.0 - bbar) * r2 * r2 * lam.norm_sq();
  std::vector<double> deficit(grid.size());
  for (std::size_t k = 0; k < deficit.size(); ++k) deficit[k] = -r2 * phi[k] + shift;
  return MeanCurvatureField::from_deficit(grid, std::move(deficit), "section6");
}

double by_deficit_closed(const RicciEigs& lam, double bbar, double r) {
  const double r2 = r * r;
  return 4.0 * kPi * r2 * r2 * (1.0 / 30.0 - bbar) * lam.norm_sq();
}

double by_expansion_small_sphere(const CurvatureData& cd, double r) {
  const double r3 = r * r * r;
  const double r5 = r3 * r * r;
  return r3 / 12.0 * cd.R +
         r5 / 1440.0 * (24.0 * cd.ric_sq - 13.0 * cd.R * cd.R + 12.0 * cd.lapR);
}

SmallSphereCase classify_small_sphere(const CurvatureData& cd) {
  CurvatureData physical = cd;
  physical.synthetic = false;
  physical.validate();
  if (cd.R > 0.0) return SmallSphereCase::CaseI;
  if (cd.ric_sq > 0.0) return SmallSphereCase::CaseII;
  if (cd.lapR > 0.0) return SmallSphereCase::CaseIII;
  return SmallSphereCase::Degenerate;
}

std::string_view to_string(SmallSphereCase c) noexcept {
  switch (c) {
    case SmallSphereCase::CaseI:
      return "CASE_I";
    case SmallSphereCase::CaseII:
      return "CASE_II";
    case SmallSphereCase::CaseIII:
      return "CASE_III";
    case SmallSphereCase::Degenerate:
      return "DEGENERATE";
  }
  return "UNKNOWN";
}

double bbar_from_b(double b, const CurvatureData& cd) {
  if (!(cd.ric_sq > 0.0)) {
    throw DomainError("the shifted parameter needs |Ric|^2 > 0");
  }
  return b - cd.lapR / (60.0 * cd.ric_sq);
}

namespace {

void require_positive(const Rational& v, const char* name) {
  if (!(v > 0)) throw DomainError(std::string(name) + " must be positive");
}

}  // namespace

Certificate cert_prop33(const Rational& beta, const Rational& lambda1, const Rational& alpha,
                        const Rational& inf_H0, const Rational& sup_H0) {
  require_positive(beta, "beta");
  require_positive(lambda1, "lambda1");
  require_positive(alpha, "alpha");
  require_positive(inf_H0, "inf H0");
  require_positive(sup_H0, "sup H0");
  Certificate c{beta, lambda1, alpha, inf_H0, sup_H0, Rational(0), std::nullopt};
  const Rational alpha1 = alpha < inf_H0 ? alpha : inf_H0;
  const Rational half_beta = beta / 2;
  c.theta = half_beta / (1 / alpha1 + sup_H0 / lambda1 + half_beta);
  c.delta = (beta / 4) / (1 / (alpha * inf_H0) + 1 / lambda1);
  return c;
}

Certificate cert_prop31(const Rational& beta, const Rational& lambda1, const Rational& alpha,
                        const Rational& inf_H0) {
  require_positive(beta, "beta");
  require_positive(lambda1, "lambda1");
  require_positive(alpha, "alpha");
  require_positive(inf_H0, "inf H0");
  Certificate c{beta, lambda1, alpha, inf_H0, inf_H0, Rational(0), std::nullopt};
  const Rational eps1 = beta / 4;
  const Rational eps2 = lambda1 * beta / 4;
  const Rational first = Rational(1, 2) / (1 / (eps1 * alpha * alpha) + 1 / eps2);
  const Rational second = (beta / 4) / (1 / (alpha * inf_H0) + 1 / lambda1);
  c.delta = first < second ? first : second;
  return c;
}

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw DomainError("cannot convert a non-finite value to a rational");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  // mant * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  boost::multiprecision::cpp_int num = scaled;
  boost::multiprecision::cpp_int den = 1;
  if (exp > 0) {
    num <<= exp;
  } else {
    den <<= -exp;
  }
  return Rational(num, den);
}

ConditionReport check_conditions_prop31(const SphereGrid& grid, const MeanCurvatureField& h,
                                        const Certificate& cert) {
  const auto d = h.deficit();
  ConditionReport rep;
  rep.deficit = integrate(grid, d);
  std::vector<double> sq(d.size());
  double neg = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    sq[k] = d[k] * d[k];
    neg = std::max(neg, -d[k]);
  }
  const double delta = cert.delta_value();
  rep.negative_sup = neg;
  rep.cond_a = rep.deficit > 0.0;
  rep.margin_a = rep.deficit;
  rep.cond_b1 = neg < delta;
  rep.margin_b1 = delta - neg;
  if (rep.cond_a) {
    rep.ratio = integrate(grid, sq) / rep.deficit;
    rep.cond_b2 = rep.ratio < delta;
    rep.margin_b2 = delta - rep.ratio;
  } else {
    rep.ratio = std::numeric_limits<double>::infinity();
    rep.cond_b2 = false;
    rep.margin_b2 = -std::numeric_limits<double>::infinity();
  }
  return rep;
}

ConditionReport33 check_conditions_prop33(const SphereGrid& grid, const MeanCurvatureField& h,
                                          const Certificate& cert) {
  if (!cert.theta) throw DomainError("certificate carries no theta");
  const auto d = h.deficit();
  std::vector<double> negpart(d.size());
  double neg = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    negpart[k] = std::min(d[k], 0.0);
    neg = std::max(neg, -d[k]);
  }
  ConditionReport33 rep;
  rep.lhs_i = cert.theta_value() * integrate(grid, d) + 2.0 * integrate(grid, negpart);
  rep.cond_i = rep.lhs_i > 0.0;
  rep.negative_sup = neg;
  rep.margin_ii = cert.delta_value() - neg;
  rep.cond_ii = rep.margin_ii > 0.0;
  return rep;
}

NegativeDirection negative_direction_section6(const HarmonicBasis& basis, const RicciEigs& lam,
                                              double bbar, double r, const Direction& a) {
  const MeanCurvatureField h = h_section6(basis.grid(), lam, bbar, r);
  NegativeDirection out;
  out.eta = kernel_coeffs(basis.L(), 0.0, a.values()) + (r * r) * optimal_eta2(basis, a, lam);
  out.F_value = eval_F(basis, h, out.eta);
  const double r2 = r * r;
  out.predicted = r2 * r2 * 4.0 * kPi * (kThresholdBbar - bbar) * lam.norm_sq();
  if (!(bbar > kThresholdBbar) || bbar > 1.0 / 30.0) {
    out.warning = true;
    out.warning_text = "bbar outside (1/90, 1/30]: no negative direction is guaranteed";
  } else if (!(out.F_value < 0.0)) {
    out.warning = true;
    out.warning_text = "r too large for this bbar: F is not negative along the witness";
  }
  return out;
}

}  // namespace wy
