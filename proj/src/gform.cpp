#include "wy/gform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wy/errors.hpp"
#include "wy/linalg.hpp"

namespace wy {

namespace {

constexpr double kPi = std::numbers::pi;

double dot3(const std::array<double, 3>& u, const std::array<double, 3>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

double weighted_ric_sq(const Direction& a, const RicciEigs& lam) {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) s += a[i] * a[i] * lam[i] * lam[i];
  return s;
}

std::vector<double> eta1_samples(const Direction& a, const SphereGrid& grid) {
  std::vector<double> out(grid.size());
  const auto xyz = grid.xyz();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = dot3(a.values(), xyz[k]);
  return out;
}

void require_cap(const HarmonicBasis& basis, const FieldCoeffs& eta2) {
  if (eta2.L != basis.L()) {
    throw ShapeMismatch("eta2 has degree cap " + std::to_string(eta2.L) + ", basis has " +
                        std::to_string(basis.L()));
  }
}

void require_kernel_free(const FieldCoeffs& eta2) {
  double scale = 1.0;
  for (double v : eta2.c) scale = std::max(scale, std::abs(v));
  if (leakage(eta2, Subspace::kernel_complement()) > 1e-12 * scale) {
    throw DomainError("eta2 must be orthogonal to span{1, x1, x2, x3}");
  }
}

// int phi [Delta eta1 Delta eta2 / 4 + <grad eta1, grad eta2>] by quadrature.
double coupling(const HarmonicBasis& basis, const FieldSamples& e1, std::span<const double> lap1,
                std::span<const double> phi, const FieldCoeffs& eta2) {
  const auto& grid = basis.grid();
  const FieldSamples e2 = basis.sample(eta2);
  const std::vector<double> lap2 = synthesize(basis, laplacian(eta2));
  const std::vector<double> g = gradient_dot(grid, e1, e2);
  std::vector<double> f(grid.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = phi[k] * (0.25 * lap1[k] * lap2[k] + g[k]);
  return integrate(grid, f);
}

}  // namespace

RicciEigs::RicciEigs(const std::array<double, 3>& lambda, double trace_tol) : lambda_(lambda) {
  double biggest = 1.0;
  for (double v : lambda_) {
    if (!std::isfinite(v)) throw DomainError("Ricci eigenvalues must be finite");
    biggest = std::max(biggest, std::abs(v));
  }
  const double trace = lambda_[0] + lambda_[1] + lambda_[2];
  if (std::abs(trace) > trace_tol * biggest) {
    throw DomainError("Ricci eigenvalues must sum to zero, got trace " + std::to_string(trace));
  }
  if (norm_sq() <= 0.0) throw DomainError("Ricci eigenvalues must not all vanish");
}

double RicciEigs::norm_sq() const noexcept { return dot3(lambda_, lambda_); }

double RicciEigs::abs_sum() const noexcept {
  return std::abs(lambda_[0]) + std::abs(lambda_[1]) + std::abs(lambda_[2]);
}

Direction::Direction(const std::array<double, 3>& a) : a_(a) {
  const double n = std::sqrt(dot3(a, a));
  if (!(std::abs(n - 1.0) <= 1e-14)) {
    throw DomainError("direction must be a unit vector, got norm " + std::to_string(n));
  }
}

Direction Direction::normalized(const std::array<double, 3>& v) {
  const double n = std::sqrt(dot3(v, v));
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero vector");
  return Direction({v[0] / n, v[1] / n, v[2] / n});
}

double GQuadratic::optimal_scale() const noexcept {
  return beta_coef / (12.0 * gamma_coef * std::sqrt(D));
}

std::vector<double> phi_field(const RicciEigs& lam, const SphereGrid& grid) {
  std::vector<double> out(grid.size());
  const auto xyz = grid.xyz();
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& x = xyz[k];
    out[k] = lam[0] * x[0] * x[0] + lam[1] * x[1] * x[1] + lam[2] * x[2] * x[2];
  }
  return out;
}

double compute_A(const Direction& a, const RicciEigs& lam) {
  return 16.0 * kPi *
         (2.0 * weighted_ric_sq(a, lam) / (3.0 * 35.0) + lam.norm_sq() / (2.0 * 3.0 * 35.0));
}

std::array<double, 3> xi_coordinates(const Direction& a, const RicciEigs& lam) {
  return {0.4 * a[0] * lam[0], 0.4 * a[1] * lam[1], 0.4 * a[2] * lam[2]};
}

std::vector<double> compute_xi(const Direction& a, const RicciEigs& lam, const SphereGrid& grid) {
  const auto b = xi_coordinates(a, lam);
  std::vector<double> out(grid.size());
  const auto xyz = grid.xyz();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = dot3(b, xyz[k]);
  return out;
}

GQuadratic g_quadratic(const Direction& a, const RicciEigs& lam, double bbar) {
  GQuadratic q;
  q.bbar = bbar;
  q.ric_sq = lam.norm_sq();
  q.A = compute_A(a, lam);
  q.D = q.A - 16.0 * kPi / 75.0 * weighted_ric_sq(a, lam);
  q.alpha = 4.0 * kPi * (1.0 / 30.0 - bbar) * q.ric_sq + 0.5 * q.A;
  q.beta_coef = 5.0 / 6.0 * std::sqrt(q.D);
  q.gamma_coef = 5.0 / 12.0;
  q.discriminant = q.beta_coef * q.beta_coef - q.alpha * q.gamma_coef;
  return q;
}

double eval_G(const HarmonicBasis& basis, const Direction& a, const RicciEigs& lam, double bbar,
              const FieldCoeffs& eta2) {
  require_cap(basis, eta2);
  require_kernel_free(eta2);
  const auto& grid = basis.grid();

  const std::vector<double> phi = phi_field(lam, grid);
  const FieldCoeffs c1 = kernel_coeffs(basis.L(), 0.0, a.values());
  const FieldSamples e1 = basis.sample(c1);
  const std::vector<double> lap1 = synthesize(basis, laplacian(c1));

  std::vector<double> quartic(grid.size());
  for (std::size_t k = 0; k < quartic.size(); ++k) {
    quartic[k] = e1.value[k] * e1.value[k] * phi[k] * phi[k];
  }

  const FieldSamples e2 = basis.sample(eta2);
  const std::vector<double> lap2 = synthesize(basis, laplacian(eta2));
  const std::vector<double> g22 = gradient_dot(grid, e2, e2);
  std::vector<double> self(grid.size());
  for (std::size_t k = 0; k < self.size(); ++k) self[k] = 0.5 * lap2[k] * lap2[k] - g22[k];

  return 4.0 * kPi * (1.0 / 30.0 - bbar) * lam.norm_sq() + 0.5 * integrate(grid, quartic) -
         2.0 * coupling(basis, e1, lap1, phi, eta2) + integrate(grid, self);
}

BIdentity eval_B(const HarmonicBasis& basis, const Direction& a, const RicciEigs& lam,
                 const FieldCoeffs& eta2) {
  require_cap(basis, eta2);
  const auto& grid = basis.grid();
  const std::vector<double> phi = phi_field(lam, grid);
  const FieldCoeffs c1 = kernel_coeffs(basis.L(), 0.0, a.values());
  const FieldSamples e1 = basis.sample(c1);
  const std::vector<double> lap1 = synthesize(basis, laplacian(c1));
  const std::vector<double> v2 = synthesize(basis, eta2);

  std::vector<double> f(grid.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = 10.0 * phi[k] * e1.value[k] * v2[k];
  return {coupling(basis, e1, lap1, phi, eta2), integrate(grid, f)};
}

FieldCoeffs phi_eta1_minus_xi(const HarmonicBasis& basis, const Direction& a,
                              const RicciEigs& lam) {
  if (basis.L() < 3) throw SizingError("phi eta1 - xi needs a basis with L >= 3");
  const auto& grid = basis.grid();
  const std::vector<double> phi = phi_field(lam, grid);
  const std::vector<double> e1 = eta1_samples(a, grid);
  const std::vector<double> xi = compute_xi(a, lam, grid);
  std::vector<double> f(grid.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = phi[k] * e1[k] - xi[k];
  return project(analyze(basis, f), Subspace::kernel_complement());
}

FieldCoeffs optimal_eta2(const HarmonicBasis& basis, const Direction& a, const RicciEigs& lam) {
  const GQuadratic q = g_quadratic(a, lam, 0.0);
  if (!(q.D > 0.0)) {
    throw InternalInconsistency("int (phi eta1 - xi)^2 must be positive, got " +
                                std::to_string(q.D));
  }
  return q.optimal_scale() * phi_eta1_minus_xi(basis, a, lam);
}

GMinimum minimize_G(const HarmonicBasis& basis, const Direction& a, const RicciEigs& lam,
                    double bbar) {
  if (basis.L() < 2) throw SizingError("minimizing G needs a basis with L >= 2");
  const auto& grid = basis.grid();
  const std::size_t nn = grid.size();
  const auto w = grid.weights();
  const auto s = grid.sin_theta();

  const std::vector<double> phi = phi_field(lam, grid);
  const FieldCoeffs c1 = kernel_coeffs(basis.L(), 0.0, a.values());
  const FieldSamples e1 = basis.sample(c1);
  const std::vector<double> lap1 = synthesize(basis, laplacian(c1));

  std::vector<double> quartic(nn);
  for (std::size_t k = 0; k < nn; ++k) quartic[k] = e1.value[k] * e1.value[k] * phi[k] * phi[k];
  const double c0 =
      4.0 * kPi * (1.0 / 30.0 - bbar) * lam.norm_sq() + 0.5 * integrate(grid, quartic);

  std::vector<int> idx;
  for (int i = 0; i < basis.size(); ++i) {
    if (basis.degree(i) >= 2) idx.push_back(i);
  }
  const std::size_t n = idx.size();

  std::vector<double> rhs(n);
  DenseMatrix P(n);
  for (std::size_t p = 0; p < n; ++p) {
    const int i = idx[p];
    const double mui = basis.eigenvalue(i);
    const auto yi = basis.values(i);
    const auto ti = basis.dtheta(i);
    const auto pi = basis.dphi(i);
    double b = 0.0;
    for (std::size_t k = 0; k < nn; ++k) {
      const double grad = e1.dtheta[k] * ti[k] + e1.dphi[k] * pi[k] / (s[k] * s[k]);
      b += w[k] * phi[k] * (0.25 * lap1[k] * (-mui * yi[k]) + grad);
    }
    rhs[p] = b;
    for (std::size_t q = p; q < n; ++q) {
      const int j = idx[q];
      const double muj = basis.eigenvalue(j);
      const auto yj = basis.values(j);
      const auto tj = basis.dtheta(j);
      const auto pj = basis.dphi(j);
      double v = 0.0;
      for (std::size_t k = 0; k < nn; ++k) {
        const double grad = ti[k] * tj[k] + pi[k] * pj[k] / (s[k] * s[k]);
        v += w[k] * (0.5 * mui * muj * yi[k] * yj[k] - grad);
      }
      P(p, q) = v;
      P(q, p) = v;
    }
  }

  std::vector<double> x;
  try {
    x = cholesky_solve(P, rhs);
  } catch (const DomainError&) {
    x = cholesky_solve(P, rhs, 1e-12);
  }

  GMinimum out;
  out.minimizer = FieldCoeffs(basis.L());
  double bx = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    out.minimizer.c[static_cast<std::size_t>(idx[p])] = x[p];
    bx += rhs[p] * x[p];
  }
  out.value = c0 - bx;
  return out;
}

BbarClass classify_bbar(double bbar, double tol) {
  if (bbar < kThresholdBbar - tol) return BbarClass::Positive;
  if (bbar > kThresholdBbar + tol) return BbarClass::Indefinite;
  return BbarClass::Borderline;
}

std::string_view to_string(BbarClass c) noexcept {
  switch (c) {
    case BbarClass::Positive:
      return "POSITIVE";
    case BbarClass::Indefinite:
      return "INDEFINITE";
    case BbarClass::Borderline:
      return "BORDERLINE";
  }
  return "UNKNOWN";
}

}  // namespace wy
