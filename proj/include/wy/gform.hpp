#pragma once

// The reduced fourth-order functional
//
//   G(eta1, eta2) = 4 pi (1/30 - bbar) |lambda|^2 + (1/2) int eta1^2 phi^2
//                 - 2 int phi [ Delta eta1 Delta eta2 / 4 + <grad eta1, grad eta2> ]
//                 + int ( (Delta eta2)^2 / 2 - |grad eta2|^2 )
//
// with phi = sum lambda_i x_i^2 (trace-free lambda), eta1 = <a, x> (|a| = 1)
// and eta2 orthogonal to span{1, x1, x2, x3}. Its infimum over eta2 is
// 4 pi (1/90 - bbar) |lambda|^2, attained at eta2 = (phi eta1 - xi) / 6 where
// xi = (2/5) sum a_i lambda_i x_i, so bbar = 1/90 separates the positive and
// indefinite regimes.

#include <array>
#include <string_view>
#include <vector>

#include "wy/harmonics.hpp"
#include "wy/quad.hpp"

namespace wy {

/// Trace-free eigenvalues (lambda_1, lambda_2, lambda_3) with positive norm.
class RicciEigs {
 public:
  /// Throws DomainError if |sum| > trace_tol * max(1, max|lambda_i|) or all are zero.
  explicit RicciEigs(const std::array<double, 3>& lambda, double trace_tol = 1e-12);

  const std::array<double, 3>& values() const noexcept { return lambda_; }
  double operator[](std::size_t i) const noexcept { return lambda_[i]; }
  double norm_sq() const noexcept;
  double abs_sum() const noexcept;

 private:
  std::array<double, 3> lambda_;
};

/// Unit vector a.
class Direction {
 public:
  /// Throws DomainError unless | |a| - 1 | <= 1e-14.
  explicit Direction(const std::array<double, 3>& a);
  /// Normalizes a nonzero vector.
  static Direction normalized(const std::array<double, 3>& v);

  const std::array<double, 3>& values() const noexcept { return a_; }
  double operator[](std::size_t i) const noexcept { return a_[i]; }

 private:
  std::array<double, 3> a_;
};

/// Coefficients of the quadratic alpha - 2 beta t + gamma t^2 that bounds G
/// from below, with t the L2 norm of Delta of the degree >= 3 part of eta2.
struct GQuadratic {
  double A = 0.0;            // int eta1^2 phi^2
  double D = 0.0;            // int (phi eta1 - xi)^2 = A - (16 pi / 75) sum a_i^2 lambda_i^2
  double alpha = 0.0;        // 4 pi (1/30 - bbar) |lambda|^2 + A / 2
  double beta_coef = 0.0;    // (5/6) sqrt(D)
  double gamma_coef = 0.0;   // 5/12
  double discriminant = 0.0; // beta^2 - alpha gamma
  double bbar = 0.0;
  double ric_sq = 0.0;

  /// (alpha gamma - beta^2) / gamma, the infimum of G over eta2.
  double minimum() const noexcept { return -discriminant / gamma_coef; }
  /// Scale k with eta2 = k (phi eta1 - xi) at the minimum: beta / (12 gamma sqrt(D)).
  double optimal_scale() const noexcept;
};

inline constexpr double kThresholdBbar = 1.0 / 90.0;

std::vector<double> phi_field(const RicciEigs& lam, const SphereGrid& grid);

/// Closed form of int eta1^2 phi^2.
double compute_A(const Direction& a, const RicciEigs& lam);

/// xi = (2/5) sum a_i lambda_i x_i, the degree-one projection of phi eta1.
std::vector<double> compute_xi(const Direction& a, const RicciEigs& lam, const SphereGrid& grid);
std::array<double, 3> xi_coordinates(const Direction& a, const RicciEigs& lam);

GQuadratic g_quadratic(const Direction& a, const RicciEigs& lam, double bbar);

/// Quadrature value of G. Throws DomainError if eta2 has degree-0/1 content
/// above 1e-12 relative to its largest coefficient.
double eval_G(const HarmonicBasis& basis, const Direction& a, const RicciEigs& lam, double bbar,
              const FieldCoeffs& eta2);

struct BIdentity {
  double lhs = 0.0;  // int phi [Delta eta1 Delta eta2 / 4 + <grad eta1, grad eta2>]
  double rhs = 0.0;  // 10 int phi eta1 eta2
};

BIdentity eval_B(const HarmonicBasis& basis, const Direction& a, const RicciEigs& lam,
                 const FieldCoeffs& eta2);

/// Coefficients of phi eta1 - xi (pure degree three).
FieldCoeffs phi_eta1_minus_xi(const HarmonicBasis& basis, const Direction& a,
                              const RicciEigs& lam);

/// k (phi eta1 - xi) with k = optimal_scale() (= 1/6). Needs L >= 3.
FieldCoeffs optimal_eta2(const HarmonicBasis& basis, const Direction& a, const RicciEigs& lam);

struct GMinimum {
  double value = 0.0;
  FieldCoeffs minimizer;
};

/// Minimizes G over all eta2 supported on degrees 2..L by solving the
/// stationarity system assembled from quadrature.
GMinimum minimize_G(const HarmonicBasis& basis, const Direction& a, const RicciEigs& lam,
                    double bbar);

enum class BbarClass { Positive, Indefinite, Borderline };

BbarClass classify_bbar(double bbar, double tol = 1e-9);
std::string_view to_string(BbarClass c) noexcept;

}  // namespace wy
