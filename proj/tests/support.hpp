#pragma once

// Shared helpers for the unit and acceptance tests: seeded generators and
// oracles that do not go through the library's evaluation paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "wy/functional.hpp"
#include "wy/gform.hpp"
#include "wy/harmonics.hpp"
#include "wy/quad.hpp"

namespace wy::testing {

inline constexpr double kPi = std::numbers::pi;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed'2026'0001ULL;

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// Random coefficients on degrees [lmin, lmax], zero elsewhere.
inline FieldCoeffs random_coeffs(std::mt19937_64& rng, int L, int lmin, int lmax) {
  std::normal_distribution<double> n01(0.0, 1.0);
  FieldCoeffs c(L);
  for (int l = lmin; l <= std::min(lmax, L); ++l) {
    for (int m = -l; m <= l; ++m) c.at(l, m) = n01(rng);
  }
  return c;
}

inline RicciEigs random_lambda(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const double l1 = u(rng);
    const double l2 = u(rng);
    const double l3 = -l1 - l2;
    if (l1 * l1 + l2 * l2 + l3 * l3 > 1e-3) return RicciEigs({l1, l2, l3});
  }
}

inline Direction random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  for (;;) {
    const std::array<double, 3> v{n01(rng), n01(rng), n01(rng)};
    if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] > 1e-6) return Direction::normalized(v);
  }
}

/// F by direct quadrature of (Delta eta)^2 / H + (1 - H) |grad eta|^2.
inline double direct_F(const HarmonicBasis& basis, const MeanCurvatureField& h,
                       const FieldCoeffs& eta) {
  const auto& grid = basis.grid();
  const FieldSamples s = basis.sample(eta);
  const std::vector<double> lap = synthesize(basis, laplacian(eta));
  const std::vector<double> g = gradient_dot(grid, s, s);
  const auto hs = h.samples();
  std::vector<double> f(grid.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = lap[k] * lap[k] / hs[k] + (1.0 - hs[k]) * g[k];
  return integrate(grid, f);
}

/// Integral of (Delta eta)^2 by quadrature.
inline double direct_laplacian_energy(const HarmonicBasis& basis, const FieldCoeffs& eta) {
  const std::vector<double> lap = synthesize(basis, laplacian(eta));
  std::vector<double> f(lap.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = lap[k] * lap[k];
  return integrate(basis.grid(), f);
}

inline double direct_gradient_energy(const HarmonicBasis& basis, const FieldCoeffs& eta) {
  const FieldSamples s = basis.sample(eta);
  return integrate(basis.grid(), gradient_dot(basis.grid(), s, s));
}

/// Exact integral of (sum a_i x_i)^2 (sum lambda_i x_i^2)^2 by expanding into
/// monomials and summing exact monomial integrals.
inline double expanded_eta1_sq_phi_sq(const std::array<double, 3>& a,
                                      const std::array<double, 3>& lam) {
  std::vector<PolyTerm> terms;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          int e[3] = {0, 0, 0};
          e[i] += 1;
          e[j] += 1;
          e[k] += 2;
          e[l] += 2;
          terms.push_back({a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)] *
                               lam[static_cast<std::size_t>(k)] * lam[static_cast<std::size_t>(l)],
                           {e[0], e[1], e[2]}});
        }
      }
    }
  }
  return poly_integral(terms);
}

}  // namespace wy::testing
