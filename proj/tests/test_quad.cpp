#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wy/errors.hpp"
#include "wy/quad.hpp"

using namespace wy;
using wy::testing::kPi;
using wy::testing::rel_err;

namespace {

// Sphere monomial integral from the Gamma-function form, independent of the
// double-factorial implementation.
double gamma_oracle(int p, int q, int r) {
  if (p % 2 || q % 2 || r % 2) return 0.0;
  return 2.0 * std::tgamma((p + 1) / 2.0) * std::tgamma((q + 1) / 2.0) *
         std::tgamma((r + 1) / 2.0) / std::tgamma((p + q + r + 3) / 2.0);
}

}  // namespace

TEST_CASE("grid construction rejects undersized grids") {
  CHECK_THROWS_AS(build_grid(1, 8), SizingError);
  CHECK_THROWS_AS(build_grid(4, 3), SizingError);
  CHECK_NOTHROW(build_grid(2, 4));
}

TEST_CASE("grid invariants") {
  for (auto [nt, np] : {std::pair{2, 4}, std::pair{7, 13}, std::pair{32, 64}}) {
    const SphereGrid g = build_grid(nt, np);
    REQUIRE(g.size() == static_cast<std::size_t>(nt * np));
    double wsum = 0.0;
    for (double w : g.weights()) {
      CHECK(w > 0.0);
      wsum += w;
    }
    CHECK(std::abs(wsum - 4.0 * kPi) < 1e-12);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& x = g.xyz()[i];
      CHECK(std::abs(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) - 1.0) < 1e-14);
      CHECK(g.sin_theta()[i] > 0.0);
    }
    // north to south
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.theta()[i] >= g.theta()[i - 1]);
  }
}

TEST_CASE("Gauss-Legendre nodes agree with an independent table") {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(30, x, w);
  using GL = boost::math::quadrature::gauss<double, 30>;
  const auto& ax = GL::abscissa();
  const auto& wx = GL::weights();
  // boost stores the nonnegative half
  for (std::size_t k = 0; k < ax.size(); ++k) {
    const double node = ax[k];
    const auto it = std::min_element(x.begin(), x.end(), [node](double a, double b) {
      return std::abs(a - node) < std::abs(b - node);
    });
    CHECK(std::abs(*it - node) < 1e-15);
    CHECK(std::abs(w[static_cast<std::size_t>(it - x.begin())] - wx[k]) < 1e-14);
  }
}

TEST_CASE("integrate examples") {
  const SphereGrid g = build_grid(32, 64);
  std::vector<double> one(g.size(), 1.0);
  CHECK(rel_err(integrate(g, one), 4.0 * kPi) < 1e-14);
  CHECK(rel_err(integrate(g, sample_monomial(g, {0, 0, 2})), 4.0 * kPi / 3.0) < 1e-13);
  CHECK(std::abs(integrate(g, sample_monomial(g, {1, 1, 1}))) < 1e-14);
  CHECK(rel_err(integrate(g, sample_monomial(g, {2, 2, 2})), 4.0 * kPi / 105.0) < 1e-12);
  std::vector<double> short_field(g.size() - 1, 1.0);
  CHECK_THROWS_AS(integrate(g, short_field), ShapeMismatch);
}

TEST_CASE("exact monomial integrals: tabulated values") {
  CHECK(monomial_integral({2, 0, 0}) == Rational(1, 3));
  CHECK(monomial_integral({2, 2, 0}) == Rational(1, 15));
  CHECK(monomial_integral({4, 2, 0}) == Rational(1, 35));
  CHECK(monomial_integral({2, 2, 2}) == Rational(1, 105));
  for (int k = 0; k <= 8; ++k) CHECK(monomial_integral({2 * k, 0, 0}) == Rational(1, 2 * k + 1));
  CHECK(monomial_integral({3, 2, 0}) == 0);
  CHECK(monomial_integral({0, 1, 0}) == 0);
  CHECK_THROWS_AS(monomial_integral({-2, 0, 0}), DomainError);
}

TEST_CASE("exact monomial integrals match the Gamma-function oracle and are symmetric") {
  for (int p = 0; p <= 12; ++p) {
    for (int q = 0; p + q <= 12; ++q) {
      for (int r = 0; p + q + r <= 12; ++r) {
        const double want = gamma_oracle(p, q, r);
        const double got = monomial_integral_value({p, q, r});
        if (want == 0.0) {
          CHECK(got == 0.0);
        } else {
          CHECK(rel_err(got, want) < 1e-13);
        }
        CHECK(monomial_integral({p, q, r}) == monomial_integral({q, r, p}));
        CHECK(monomial_integral({p, q, r}) == monomial_integral({r, q, p}));
      }
    }
  }
}

TEST_CASE("quadrature reproduces every even monomial through degree 10") {
  const SphereGrid g = build_grid(32, 64);
  for (int p = 0; p <= 10; p += 2) {
    for (int q = 0; p + q <= 10; q += 2) {
      for (int r = 0; p + q + r <= 10; r += 2) {
        const double exact = monomial_integral_value({p, q, r});
        CHECK(rel_err(integrate(g, sample_monomial(g, {p, q, r})), exact) < 1e-11);
      }
    }
  }
}

TEST_CASE("exactness bound of a coarse grid") {
  const SphereGrid g = build_grid(4, 8);
  REQUIRE(g.exact_degree() == 7);
  // degree 6 is within the bound, degree 8 is not
  CHECK(rel_err(integrate(g, sample_monomial(g, {2, 2, 2})), 4.0 * kPi / 105.0) < 1e-13);
  CHECK(rel_err(integrate(g, sample_monomial(g, {0, 0, 6})), 4.0 * kPi / 7.0) < 1e-13);
  CHECK(rel_err(integrate(g, sample_monomial(g, {8, 0, 0})), 4.0 * kPi / 9.0) > 1e-6);
  CHECK(rel_err(integrate(g, sample_monomial(g, {0, 0, 8})), 4.0 * kPi / 9.0) > 1e-6);
}

TEST_CASE("poly_integral examples") {
  // x1^2 + x2^2 + x3^2 = 1
  const std::vector<PolyTerm> sphere{{1.0, {2, 0, 0}}, {1.0, {0, 2, 0}}, {1.0, {0, 0, 2}}};
  CHECK(rel_err(poly_integral(sphere), 4.0 * kPi) < 1e-15);
  CHECK(poly_integral(std::span<const PolyTerm>{}) == 0.0);

  // x1^2 phi^2 with phi = sum lambda_i x_i^2, closed form
  // 16 pi (lambda1^2 / 35 - (lambda1^2 - lambda2^2 - lambda3^2) / 210)
  const double l1 = 1.0;
  const double l2 = -0.5;
  const double l3 = -0.5;
  std::vector<PolyTerm> t;
  const double lam[3] = {l1, l2, l3};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int e[3] = {2, 0, 0};
      e[i] += 2;
      e[j] += 2;
      t.push_back({lam[i] * lam[j], {e[0], e[1], e[2]}});
    }
  }
  const double want = 16.0 * kPi * (l1 * l1 / 35.0 - (l1 * l1 - l2 * l2 - l3 * l3) / 210.0);
  CHECK(rel_err(poly_integral(t), want) < 1e-14);
}

TEST_CASE("property: random polynomials of degree <= 8 integrate exactly") {
  std::mt19937_64 rng(wy::testing::kDefaultSeed);
  std::uniform_int_distribution<int> deg(0, 8);
  std::normal_distribution<double> n01(0.0, 1.0);
  const SphereGrid g = build_grid(16, 32);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PolyTerm> terms;
    std::vector<double> field(g.size(), 0.0);
    double scale = 0.0;
    for (int k = 0; k < 6; ++k) {
      int p = deg(rng);
      int q = deg(rng) % (9 - p);
      int r = deg(rng) % (9 - p - q);
      const double c = n01(rng);
      terms.push_back({c, {p, q, r}});
      scale += std::abs(c);
      const auto s = sample_monomial(g, {p, q, r});
      for (std::size_t i = 0; i < field.size(); ++i) field[i] += c * s[i];
    }
    CHECK(std::abs(integrate(g, field) - poly_integral(terms)) < 1e-12 * 4.0 * kPi * scale);
  }
}
