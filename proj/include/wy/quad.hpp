#pragma once

// Quadrature on the unit sphere and exact integrals of coordinate monomials.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wy {

/// Exact rational; integrals of monomials are reported as multiples of 4*pi.
using Rational = boost::multiprecision::cpp_rational;

/// Gauss-Legendre (in cos theta) x uniform (in phi) product rule on S^2.
///
/// Nodes are stored theta-major: node index = i_theta * n_phi + i_phi.
/// No node sits on a pole, so 1/sin(theta) is finite everywhere.
class SphereGrid {
 public:
  SphereGrid(int n_theta, int n_phi);

  int n_theta() const noexcept { return n_theta_; }
  int n_phi() const noexcept { return n_phi_; }
  std::size_t size() const noexcept { return weights_.size(); }

  std::span<const double> theta() const noexcept { return theta_; }
  std::span<const double> phi() const noexcept { return phi_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> sin_theta() const noexcept { return sin_theta_; }
  std::span<const std::array<double, 3>> xyz() const noexcept { return xyz_; }

  /// Highest total polynomial degree in (x1, x2, x3) integrated exactly.
  int exact_degree() const noexcept;

 private:
  int n_theta_;
  int n_phi_;
  std::vector<double> theta_;
  std::vector<double> phi_;
  std::vector<double> weights_;
  std::vector<double> sin_theta_;
  std::vector<std::array<double, 3>> xyz_;
};

SphereGrid build_grid(int n_theta, int n_phi);

/// Sum of w_i * field_i. Throws ShapeMismatch on length mismatch.
double integrate(const SphereGrid& grid, std::span<const double> field);

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct MonomialExponents {
  int p = 0;
  int q = 0;
  int r = 0;
};

/// Integral of x1^p x2^q x3^r over S^2, divided by 4*pi, as an exact rational:
/// zero if any exponent is odd, else (p-1)!!(q-1)!!(r-1)!!/(p+q+r+1)!!.
Rational monomial_integral(MonomialExponents e);

/// 4*pi times monomial_integral, in double precision.
double monomial_integral_value(MonomialExponents e);

struct PolyTerm {
  double coefficient = 0.0;
  MonomialExponents exponents;
};

/// Integral over S^2 of a polynomial given as a list of monomial terms.
double poly_integral(std::span<const PolyTerm> terms);

/// Samples x1^p x2^q x3^r on every node.
std::vector<double> sample_monomial(const SphereGrid& grid, MonomialExponents e);

}  // namespace wy
