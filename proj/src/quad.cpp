#include "wy/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wy/errors.hpp"

namespace wy {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Final derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    nodes[static_cast<std::size_t>(i)] = -x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

SphereGrid::SphereGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 2 || n_phi < 4) {
    throw SizingError("sphere grid needs n_theta >= 2 and n_phi >= 4, got (" +
                      std::to_string(n_theta) + ", " + std::to_string(n_phi) + ")");
  }
  std::vector<double> x;
  std::vector<double> wx;
  gauss_legendre(n_theta, x, wx);

  const std::size_t total = static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi);
  theta_.reserve(total);
  phi_.reserve(total);
  weights_.reserve(total);
  sin_theta_.reserve(total);
  xyz_.reserve(total);

  const double dphi = 2.0 * std::numbers::pi / n_phi;
  // Descending cos(theta) so theta runs north to south.
  for (int it = n_theta - 1; it >= 0; --it) {
    const double c = x[static_cast<std::size_t>(it)];
    const double s = std::sqrt((1.0 - c) * (1.0 + c));
    const double th = std::atan2(s, c);
    for (int ip = 0; ip < n_phi; ++ip) {
      const double ph = dphi * ip;
      theta_.push_back(th);
      phi_.push_back(ph);
      weights_.push_back(wx[static_cast<std::size_t>(it)] * dphi);
      sin_theta_.push_back(s);
      xyz_.push_back({s * std::cos(ph), s * std::sin(ph), c});
    }
  }
}

int SphereGrid::exact_degree() const noexcept {
  return std::min(2 * n_theta_ - 1, n_phi_ - 1);
}

SphereGrid build_grid(int n_theta, int n_phi) { return SphereGrid(n_theta, n_phi); }

double integrate(const SphereGrid& grid, std::span<const double> field) {
  if (field.size() != grid.size()) {
    throw ShapeMismatch("field has " + std::to_string(field.size()) + " samples, grid has " +
                        std::to_string(grid.size()) + " nodes");
  }
  const auto w = grid.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) sum += w[i] * field[i];
  return sum;
}

namespace {

using boost::multiprecision::cpp_int;

// n!! for odd n >= -1 (with (-1)!! = 1).
cpp_int odd_double_factorial(int n) {
  cpp_int result = 1;
  for (int k = n; k > 1; k -= 2) result *= k;
  return result;
}

}  // namespace

Rational monomial_integral(MonomialExponents e) {
  if (e.p < 0 || e.q < 0 || e.r < 0) {
    throw DomainError("monomial exponents must be nonnegative");
  }
  if (e.p % 2 != 0 || e.q % 2 != 0 || e.r % 2 != 0) return Rational(0);
  const cpp_int num =
      odd_double_factorial(e.p - 1) * odd_double_factorial(e.q - 1) * odd_double_factorial(e.r - 1);
  const cpp_int den = odd_double_factorial(e.p + e.q + e.r + 1);
  return Rational(num, den);
}

double monomial_integral_value(MonomialExponents e) {
  return 4.0 * std::numbers::pi * static_cast<double>(monomial_integral(e));
}

double poly_integral(std::span<const PolyTerm> terms) {
  double sum = 0.0;
  for (const auto& t : terms) {
    if (t.coefficient == 0.0) continue;
    sum += t.coefficient * static_cast<double>(monomial_integral(t.exponents));
  }
  return 4.0 * std::numbers::pi * sum;
}

std::vector<double> sample_monomial(const SphereGrid& grid, MonomialExponents e) {
  std::vector<double> out(grid.size());
  const auto xyz = grid.xyz();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::pow(xyz[i][0], e.p) * std::pow(xyz[i][1], e.q) * std::pow(xyz[i][2], e.r);
  }
  return out;
}

}  // namespace wy
