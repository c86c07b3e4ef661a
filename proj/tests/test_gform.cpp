#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wy/errors.hpp"
#include "wy/gform.hpp"

using namespace wy;
using wy::testing::kDefaultSeed;
using wy::testing::kPi;
using wy::testing::random_coeffs;
using wy::testing::random_direction;
using wy::testing::random_lambda;
using wy::testing::rel_err;

namespace {

struct Fixture {
  SphereGrid grid{32, 64};
  HarmonicBasis basis{grid, 8};
};

double min_formula(const RicciEigs& lam, double bbar) {
  return 4.0 * kPi * (1.0 / 90.0 - bbar) * lam.norm_sq();
}

// quadrature of eta1^2 phi^2
double quad_A(const SphereGrid& g, const Direction& a, const RicciEigs& lam) {
  const std::vector<double> phi = phi_field(lam, g);
  std::vector<double> f(g.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto& x = g.xyz()[k];
    const double e = a[0] * x[0] + a[1] * x[1] + a[2] * x[2];
    f[k] = e * e * phi[k] * phi[k];
  }
  return integrate(g, f);
}

}  // namespace

TEST_CASE("input validation") {
  CHECK_THROWS_AS(RicciEigs({1.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(RicciEigs({0.0, 0.0, 0.0}), DomainError);
  CHECK_NOTHROW(RicciEigs({1.0, 1.0, -2.0 + 1e-13}));
  CHECK_THROWS_AS(RicciEigs({1.0, 1.0, -2.0 + 1e-9}), DomainError);
  CHECK_THROWS_AS(Direction({1.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Direction::normalized({0.0, 0.0, 0.0}), DomainError);
  CHECK(Direction::normalized({3.0, 0.0, 4.0})[2] == doctest::Approx(0.8));
}

TEST_CASE("phi examples") {
  const SphereGrid g(4, 8);
  const std::vector<double> phi = phi_field(RicciEigs({1.0, -1.0, 0.0}), g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& x = g.xyz()[k];
    CHECK(phi[k] == doctest::Approx(x[0] * x[0] - x[1] * x[1]));
  }
}

TEST_CASE("compute_A examples") {
  CHECK(rel_err(compute_A(Direction({1.0, 0.0, 0.0}), RicciEigs({1.0, -0.5, -0.5})),
                44.0 * kPi / 105.0) < 1e-14);
  CHECK(rel_err(compute_A(Direction({0.0, 0.0, 1.0}), RicciEigs({1.0, 1.0, -2.0})),
                176.0 * kPi / 105.0) < 1e-14);
  CHECK(rel_err(compute_A(Direction({0.0, 0.0, 1.0}), RicciEigs({1.0, -1.0, 0.0})),
                16.0 * kPi / 105.0) < 1e-14);
}

TEST_CASE("property: compute_A matches exact monomial expansion and quadrature") {
  const SphereGrid g(16, 32);
  std::mt19937_64 rng(kDefaultSeed);
  for (int trial = 0; trial < 100; ++trial) {
    const Direction a = random_direction(rng);
    const RicciEigs lam = random_lambda(rng);
    const double A = compute_A(a, lam);
    CHECK(rel_err(A, wy::testing::expanded_eta1_sq_phi_sq(a.values(), lam.values())) < 1e-12);
    CHECK(rel_err(A, quad_A(g, a, lam)) < 1e-10);
  }
}

TEST_CASE("xi examples and projection property") {
  const auto b = xi_coordinates(Direction({1.0, 0.0, 0.0}), RicciEigs({1.0, -0.5, -0.5}));
  CHECK(b[0] == doctest::Approx(0.4));
  CHECK(b[1] == 0.0);
  CHECK(b[2] == 0.0);
  const auto z = xi_coordinates(Direction({0.0, 0.0, 1.0}), RicciEigs({1.0, -1.0, 0.0}));
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 0.0);
  CHECK(z[2] == 0.0);

  // xi is the degree-one part of phi eta1
  Fixture f;
  std::mt19937_64 rng(kDefaultSeed + 1);
  for (int trial = 0; trial < 10; ++trial) {
    const Direction a = random_direction(rng);
    const RicciEigs lam = random_lambda(rng);
    const std::vector<double> phi = phi_field(lam, f.grid);
    std::vector<double> pe(f.grid.size());
    for (std::size_t k = 0; k < pe.size(); ++k) {
      const auto& x = f.grid.xyz()[k];
      pe[k] = phi[k] * (a[0] * x[0] + a[1] * x[1] + a[2] * x[2]);
    }
    const FieldCoeffs c = analyze(f.basis, pe);
    const FieldCoeffs xi = analyze(f.basis, compute_xi(a, lam, f.grid));
    for (int m = -1; m <= 1; ++m) CHECK(std::abs(c.at(1, m) - xi.at(1, m)) < 1e-13);
  }
}

TEST_CASE("discriminant examples") {
  std::mt19937_64 rng(kDefaultSeed + 2);
  for (int trial = 0; trial < 10; ++trial) {
    const GQuadratic q = g_quadratic(random_direction(rng), random_lambda(rng), 1.0 / 90.0);
    CHECK(std::abs(q.discriminant) < 1e-12 * std::max(1.0, q.alpha));
  }
  CHECK(rel_err(g_quadratic(Direction({0.0, 0.0, 1.0}), RicciEigs({1.0, 1.0, -2.0}), 1.0 / 30.0)
                    .discriminant,
                2.0 * kPi / 9.0) < 1e-12);
  // -(1/54) pi * 2
  CHECK(rel_err(g_quadratic(Direction({1.0, 0.0, 0.0}), RicciEigs({1.0, -1.0, 0.0}), 0.0)
                    .discriminant,
                -kPi / 27.0) < 1e-12);
}

TEST_CASE("property: discriminant formula over random inputs") {
  std::mt19937_64 rng(kDefaultSeed + 3);
  std::uniform_real_distribution<double> ub(-0.05, 0.08);
  for (int trial = 0; trial < 50; ++trial) {
    const Direction a = random_direction(rng);
    const RicciEigs lam = random_lambda(rng);
    const double bbar = ub(rng);
    const GQuadratic q = g_quadratic(a, lam, bbar);
    const double want = -(1.0 / 54.0 - 5.0 / 3.0 * bbar) * kPi * lam.norm_sq();
    CHECK(std::abs(q.discriminant - want) <= 1e-12 * std::max(std::abs(want), q.alpha * q.gamma_coef));
    CHECK(q.gamma_coef == 5.0 / 12.0);
    CHECK(q.D > 0.0);
    CHECK(q.optimal_scale() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(rel_err(q.minimum(), min_formula(lam, bbar)) < 1e-10);
  }
}

TEST_CASE("eval_G examples") {
  Fixture f;
  const Direction a({0.0, 0.0, 1.0});
  const RicciEigs lam({1.0, 1.0, -2.0});
  for (double bbar : {0.0, 1.0 / 90.0, 1.0 / 30.0}) {
    const double g0 = eval_G(f.basis, a, lam, bbar, FieldCoeffs(8));
    CHECK(rel_err(g0, g_quadratic(a, lam, bbar).alpha) < 1e-12);
  }
  const double gstar = eval_G(f.basis, a, lam, 1.0 / 30.0, optimal_eta2(f.basis, a, lam));
  CHECK(rel_err(gstar, -8.0 * kPi / 15.0) < 1e-10);

  // pure degree two: the cross term vanishes
  std::mt19937_64 rng(kDefaultSeed + 4);
  const FieldCoeffs t2 = random_coeffs(rng, 8, 2, 2);
  const double g = eval_G(f.basis, a, lam, 0.0, t2);
  const double want = g_quadratic(a, lam, 0.0).alpha + 0.5 * wy::testing::direct_laplacian_energy(f.basis, t2) -
                      wy::testing::direct_gradient_energy(f.basis, t2);
  CHECK(rel_err(g, want) < 1e-10);

  CHECK_THROWS_AS(eval_G(f.basis, a, lam, 0.0, kernel_coeffs(8, 0.0, {1.0, 0.0, 0.0})), DomainError);
  CHECK_THROWS_AS(eval_G(f.basis, a, lam, 0.0, FieldCoeffs(6)), ShapeMismatch);
}

TEST_CASE("B identity") {
  Fixture f;
  std::mt19937_64 rng(kDefaultSeed + 5);
  for (int trial = 0; trial < 50; ++trial) {
    const Direction a = random_direction(rng);
    const RicciEigs lam = random_lambda(rng);
    const FieldCoeffs eta2 = random_coeffs(rng, 8, 2, 8);
    const BIdentity b = eval_B(f.basis, a, lam, eta2);
    CHECK(std::abs(b.lhs - b.rhs) < 1e-9 * std::max(1.0, std::abs(b.rhs)));
    const BIdentity b2 = eval_B(f.basis, a, lam, project(eta2, Subspace::eigenspace(2)));
    CHECK(std::abs(b2.lhs) < 1e-9);
    CHECK(std::abs(b2.rhs) < 1e-9);
  }
  const Direction a({0.6, 0.0, 0.8});
  const RicciEigs lam({2.0, -0.5, -1.5});
  const BIdentity bd = eval_B(f.basis, a, lam, phi_eta1_minus_xi(f.basis, a, lam));
  CHECK(rel_err(bd.rhs, 10.0 * g_quadratic(a, lam, 0.0).D) < 1e-10);
}

TEST_CASE("phi eta1 - xi is a pure degree-three eigenfunction") {
  Fixture f;
  std::mt19937_64 rng(kDefaultSeed + 6);
  for (int trial = 0; trial < 10; ++trial) {
    const Direction a = random_direction(rng);
    const RicciEigs lam = random_lambda(rng);
    const FieldCoeffs c = phi_eta1_minus_xi(f.basis, a, lam);
    double scale = 0.0;
    for (double v : c.c) scale = std::max(scale, std::abs(v));
    CHECK(leakage(c, Subspace::eigenspace(3)) < 1e-13 * scale);
    // pointwise eigen-relation, using samples built directly from the definition
    const std::vector<double> phi = phi_field(lam, f.grid);
    const std::vector<double> xi = compute_xi(a, lam, f.grid);
    std::vector<double> direct(f.grid.size());
    for (std::size_t k = 0; k < direct.size(); ++k) {
      const auto& x = f.grid.xyz()[k];
      direct[k] = phi[k] * (a[0] * x[0] + a[1] * x[1] + a[2] * x[2]) - xi[k];
    }
    const std::vector<double> lap = synthesize(f.basis, laplacian(analyze(f.basis, direct)));
    double worst = 0.0;
    for (std::size_t k = 0; k < lap.size(); ++k) worst = std::max(worst, std::abs(lap[k] + 12.0 * direct[k]));
    CHECK(worst < 1e-10);
    // D equals its quadrature
    double d = 0.0;
    std::vector<double> sq(direct.size());
    for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = direct[k] * direct[k];
    d = integrate(f.grid, sq);
    CHECK(rel_err(d, g_quadratic(a, lam, 0.0).D) < 1e-11);
  }
  const SphereGrid g(8, 16);
  const HarmonicBasis b2(g, 2);
  CHECK_THROWS_AS(phi_eta1_minus_xi(b2, Direction({1.0, 0.0, 0.0}), RicciEigs({1.0, -1.0, 0.0})),
                  SizingError);
}

TEST_CASE("optimal scale is 1/6 and a strict minimum along the ray") {
  Fixture f;
  std::mt19937_64 rng(kDefaultSeed + 7);
  std::uniform_real_distribution<double> ub(0.0, 1.0 / 30.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Direction a = random_direction(rng);
    const RicciEigs lam = random_lambda(rng);
    const double bbar = ub(rng);
    const FieldCoeffs e = optimal_eta2(f.basis, a, lam);
    const double g = eval_G(f.basis, a, lam, bbar, e);
    CHECK(std::abs(g - min_formula(lam, bbar)) < 1e-8);
    CHECK(eval_G(f.basis, a, lam, bbar, 1.1 * e) > g);
    CHECK(eval_G(f.basis, a, lam, bbar, 0.9 * e) > g);
  }
}

TEST_CASE("classify_bbar") {
  CHECK(classify_bbar(0.0) == BbarClass::Positive);
  CHECK(classify_bbar(1.0 / 30.0) == BbarClass::Indefinite);
  CHECK(classify_bbar(1.0 / 90.0) == BbarClass::Borderline);
  CHECK(classify_bbar(1.0 / 90.0 + 1e-8) == BbarClass::Indefinite);
  CHECK(classify_bbar(1.0 / 90.0 + 1e-8, 1e-6) == BbarClass::Borderline);
  CHECK(to_string(BbarClass::Positive) == "POSITIVE");
}

TEST_CASE("property: G never falls below the closed-form infimum") {
  Fixture f;
  std::mt19937_64 rng(kDefaultSeed + 8);
  std::uniform_real_distribution<double> ub(-0.02, 1.0 / 90.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Direction a = random_direction(rng);
    const RicciEigs lam = random_lambda(rng);
    const double bbar = ub(rng);
    std::normal_distribution<double> n01(0.0, 1.0);
    const FieldCoeffs eta2 = n01(rng) * optimal_eta2(f.basis, a, lam) + 0.1 * random_coeffs(rng, 8, 2, 8);
    CHECK(eval_G(f.basis, a, lam, bbar, eta2) >= min_formula(lam, bbar) - 1e-8);
    if (bbar < 1.0 / 90.0 - 1e-9) CHECK(eval_G(f.basis, a, lam, bbar, eta2) > 0.0);
  }
}

TEST_CASE("numerical minimization attains the closed form") {
  Fixture f;
  std::mt19937_64 rng(kDefaultSeed + 9);
  for (int trial = 0; trial < 5; ++trial) {
    const Direction a = random_direction(rng);
    const RicciEigs lam = random_lambda(rng);
    for (double bbar : {0.0, 1.0 / 30.0}) {
      const GMinimum m = minimize_G(f.basis, a, lam, bbar);
      CHECK(rel_err(m.value, min_formula(lam, bbar)) < 1e-6);
      // minimizer is k (phi eta1 - xi)
      const FieldCoeffs diff = m.minimizer - optimal_eta2(f.basis, a, lam);
      double scale = 0.0;
      for (double v : m.minimizer.c) scale = std::max(scale, std::abs(v));
      for (double v : diff.c) CHECK(std::abs(v) < 1e-8 * scale);
    }
  }
}

TEST_CASE("scaling and permutation covariance") {
  std::mt19937_64 rng(kDefaultSeed + 10);
  for (int trial = 0; trial < 20; ++trial) {
    const Direction a = random_direction(rng);
    const RicciEigs lam = random_lambda(rng);
    const double s = 0.5 + trial * 0.1;
    const RicciEigs slam({s * lam[0], s * lam[1], s * lam[2]});
    const GQuadratic q = g_quadratic(a, lam, 0.0);
    const GQuadratic qs = g_quadratic(a, slam, 0.0);
    CHECK(rel_err(qs.A, s * s * q.A) < 1e-13);
    CHECK(rel_err(qs.D, s * s * q.D) < 1e-13);
    CHECK(rel_err(qs.minimum(), s * s * q.minimum()) < 1e-12);

    const Direction ap({a[2], a[0], a[1]});
    const RicciEigs lp({lam[2], lam[0], lam[1]});
    const GQuadratic qp = g_quadratic(ap, lp, 0.0);
    CHECK(rel_err(qp.A, q.A) < 1e-13);
    CHECK(rel_err(qp.D, q.D) < 1e-13);
    CHECK(std::abs(qp.discriminant - q.discriminant) < 1e-13 * std::abs(q.alpha));
  }
}
