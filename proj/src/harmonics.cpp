#include "wy/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wy/errors.hpp"

namespace wy {

FieldCoeffs::FieldCoeffs(int degree_cap)
    : L(degree_cap), c(static_cast<std::size_t>(harmonic_count(degree_cap)), 0.0) {
  if (degree_cap < 0) throw SizingError("degree cap must be nonnegative");
}

FieldCoeffs::FieldCoeffs(int degree_cap, std::vector<double> values)
    : L(degree_cap), c(std::move(values)) {
  if (degree_cap < 0) throw SizingError("degree cap must be nonnegative");
  if (c.size() != static_cast<std::size_t>(harmonic_count(L))) {
    throw ShapeMismatch("coefficient vector has length " + std::to_string(c.size()) +
                        ", expected " + std::to_string(harmonic_count(L)));
  }
}

namespace {

void require_same_cap(const FieldCoeffs& a, const FieldCoeffs& b) {
  if (a.L != b.L) {
    throw ShapeMismatch("degree caps differ: " + std::to_string(a.L) + " vs " +
                        std::to_string(b.L));
  }
}

}  // namespace

FieldCoeffs& FieldCoeffs::operator+=(const FieldCoeffs& other) {
  require_same_cap(*this, other);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.c[i];
  return *this;
}

FieldCoeffs& FieldCoeffs::operator-=(const FieldCoeffs& other) {
  require_same_cap(*this, other);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= other.c[i];
  return *this;
}

FieldCoeffs& FieldCoeffs::operator*=(double s) {
  for (double& v : c) v *= s;
  return *this;
}

FieldCoeffs operator+(FieldCoeffs a, const FieldCoeffs& b) { return a += b; }
FieldCoeffs operator-(FieldCoeffs a, const FieldCoeffs& b) { return a -= b; }
FieldCoeffs operator*(double s, FieldCoeffs a) { return a *= s; }

HarmonicBasis::HarmonicBasis(const SphereGrid& grid, int L) : grid_(&grid), L_(L) {
  if (L < 0) throw SizingError("degree cap must be nonnegative");
  if (grid.exact_degree() < 2 * L) {
    throw SizingError("grid (" + std::to_string(grid.n_theta()) + ", " +
                      std::to_string(grid.n_phi()) + ") is exact to degree " +
                      std::to_string(grid.exact_degree()) + ", basis with L = " +
                      std::to_string(L) + " needs " + std::to_string(2 * L));
  }

  const int nb = harmonic_count(L);
  const std::size_t nn = grid.size();
  degrees_.resize(static_cast<std::size_t>(nb));
  orders_.resize(static_cast<std::size_t>(nb));
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      degrees_[static_cast<std::size_t>(harmonic_index(l, m))] = l;
      orders_[static_cast<std::size_t>(harmonic_index(l, m))] = m;
    }
  }
  values_.assign(static_cast<std::size_t>(nb) * nn, 0.0);
  dtheta_.assign(static_cast<std::size_t>(nb) * nn, 0.0);
  dphi_.assign(static_cast<std::size_t>(nb) * nn, 0.0);

  // Fully normalized associated Legendre functions Pbar_lm with
  // integral over S^2 of (Pbar_lm(cos t))^2 * (azimuthal factor) = 1 for m = 0.
  const auto idx = [L](int l, int m) { return static_cast<std::size_t>(l * (L + 1) + m); };
  std::vector<double> pbar(static_cast<std::size_t>((L + 1) * (L + 1)));
  std::vector<double> dpbar(pbar.size());

  const auto theta = grid.theta();
  const auto phi = grid.phi();
  const auto sin_t = grid.sin_theta();
  const double sqrt2 = std::numbers::sqrt2;

  for (std::size_t node = 0; node < nn; ++node) {
    const double c = std::cos(theta[node]);
    const double s = sin_t[node];

    pbar[idx(0, 0)] = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int m = 1; m <= L; ++m) {
      pbar[idx(m, m)] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * pbar[idx(m - 1, m - 1)];
    }
    for (int m = 0; m < L; ++m) {
      pbar[idx(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * c * pbar[idx(m, m)];
    }
    for (int m = 0; m <= L; ++m) {
      for (int l = m + 2; l <= L; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1.0) / (1.0 * l * l - 1.0 * m * m));
        const double b = std::sqrt(((l - 1.0) * (l - 1.0) - 1.0 * m * m) /
                                   (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
        pbar[idx(l, m)] = a * (c * pbar[idx(l - 1, m)] - b * pbar[idx(l - 2, m)]);
      }
    }
    // sin(t) dPbar_lm/dt = l cos(t) Pbar_lm - sqrt((2l+1)(l^2-m^2)/(2l-1)) Pbar_{l-1,m}
    for (int l = 0; l <= L; ++l) {
      for (int m = 0; m <= l; ++m) {
        double lower = 0.0;
        if (l > m) {
          lower = std::sqrt((2.0 * l + 1.0) * (1.0 * l * l - 1.0 * m * m) / (2.0 * l - 1.0)) *
                  pbar[idx(l - 1, m)];
        }
        dpbar[idx(l, m)] = (l * c * pbar[idx(l, m)] - lower) / s;
      }
    }

    for (int l = 0; l <= L; ++l) {
      const std::size_t row0 = static_cast<std::size_t>(harmonic_index(l, 0)) * nn + node;
      values_[row0] = pbar[idx(l, 0)];
      dtheta_[row0] = dpbar[idx(l, 0)];
      for (int m = 1; m <= l; ++m) {
        const double cm = std::cos(m * phi[node]);
        const double sm = std::sin(m * phi[node]);
        const std::size_t pos = static_cast<std::size_t>(harmonic_index(l, m)) * nn + node;
        const std::size_t neg = static_cast<std::size_t>(harmonic_index(l, -m)) * nn + node;
        const double p = sqrt2 * pbar[idx(l, m)];
        const double dp = sqrt2 * dpbar[idx(l, m)];
        values_[pos] = p * cm;
        dtheta_[pos] = dp * cm;
        dphi_[pos] = -m * p * sm;
        values_[neg] = p * sm;
        dtheta_[neg] = dp * sm;
        dphi_[neg] = m * p * cm;
      }
    }
  }
}

FieldSamples HarmonicBasis::sample(const FieldCoeffs& coeffs) const {
  if (coeffs.L > L_) {
    throw ShapeMismatch("coefficients have degree cap " + std::to_string(coeffs.L) +
                        " but basis has " + std::to_string(L_));
  }
  const std::size_t nn = grid_->size();
  FieldSamples out{std::vector<double>(nn, 0.0), std::vector<double>(nn, 0.0),
                   std::vector<double>(nn, 0.0)};
  for (int i = 0; i < static_cast<int>(coeffs.size()); ++i) {
    const double ci = coeffs.c[static_cast<std::size_t>(i)];
    if (ci == 0.0) continue;
    const auto v = values(i);
    const auto dt = dtheta(i);
    const auto dp = dphi(i);
    for (std::size_t k = 0; k < nn; ++k) {
      out.value[k] += ci * v[k];
      out.dtheta[k] += ci * dt[k];
      out.dphi[k] += ci * dp[k];
    }
  }
  return out;
}

HarmonicBasis build_basis(const SphereGrid& grid, int L) { return HarmonicBasis(grid, L); }

FieldCoeffs analyze(const HarmonicBasis& basis, std::span<const double> field) {
  const auto& grid = basis.grid();
  if (field.size() != grid.size()) {
    throw ShapeMismatch("field has " + std::to_string(field.size()) + " samples, grid has " +
                        std::to_string(grid.size()) + " nodes");
  }
  const auto w = grid.weights();
  std::vector<double> weighted(field.size());
  for (std::size_t k = 0; k < field.size(); ++k) weighted[k] = w[k] * field[k];

  FieldCoeffs out(basis.L());
  for (int i = 0; i < basis.size(); ++i) {
    const auto y = basis.values(i);
    double sum = 0.0;
    for (std::size_t k = 0; k < field.size(); ++k) sum += weighted[k] * y[k];
    out.c[static_cast<std::size_t>(i)] = sum;
  }
  return out;
}

std::vector<double> synthesize(const HarmonicBasis& basis, const FieldCoeffs& coeffs) {
  if (coeffs.L > basis.L()) {
    throw ShapeMismatch("coefficients have degree cap " + std::to_string(coeffs.L) +
                        " but basis has " + std::to_string(basis.L()));
  }
  std::vector<double> out(basis.grid().size(), 0.0);
  for (int i = 0; i < static_cast<int>(coeffs.size()); ++i) {
    const double ci = coeffs.c[static_cast<std::size_t>(i)];
    if (ci == 0.0) continue;
    const auto y = basis.values(i);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += ci * y[k];
  }
  return out;
}

FieldCoeffs laplacian(const FieldCoeffs& coeffs) {
  FieldCoeffs out = coeffs;
  for (int l = 0; l <= coeffs.L; ++l) {
    const double mu = l * (l + 1.0);
    for (int m = -l; m <= l; ++m) out.at(l, m) *= -mu;
  }
  return out;
}

bool Subspace::contains_degree(int l) const noexcept {
  switch (kind) {
    case SubspaceKind::Kernel:
      return l <= 1;
    case SubspaceKind::Eigenspace:
      return l == k;
    case SubspaceKind::KernelComplement:
      return l >= 2;
  }
  return false;
}

FieldCoeffs project(const FieldCoeffs& coeffs, Subspace subspace) {
  FieldCoeffs out = coeffs;
  for (int l = 0; l <= coeffs.L; ++l) {
    if (subspace.contains_degree(l)) continue;
    for (int m = -l; m <= l; ++m) out.at(l, m) = 0.0;
  }
  return out;
}

double leakage(const FieldCoeffs& coeffs, Subspace subspace) {
  double worst = 0.0;
  for (int l = 0; l <= coeffs.L; ++l) {
    if (subspace.contains_degree(l)) continue;
    for (int m = -l; m <= l; ++m) worst = std::max(worst, std::abs(coeffs.at(l, m)));
  }
  return worst;
}

std::vector<double> gradient_dot(const SphereGrid& grid, const FieldSamples& u,
                                 const FieldSamples& v) {
  const std::size_t n = grid.size();
  if (u.dtheta.size() != n || u.dphi.size() != n || v.dtheta.size() != n || v.dphi.size() != n) {
    throw ShapeMismatch("gradient_dot needs theta/phi derivative samples on every node");
  }
  const auto s = grid.sin_theta();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = u.dtheta[k] * v.dtheta[k] + u.dphi[k] * v.dphi[k] / (s[k] * s[k]);
  }
  return out;
}

FieldCoeffs kernel_coeffs(int L, double a0, const std::array<double, 3>& a) {
  FieldCoeffs out(L);
  out.at(0, 0) = a0 * std::sqrt(4.0 * std::numbers::pi);
  if (L >= 1) {
    const double s = std::sqrt(4.0 * std::numbers::pi / 3.0);
    out.at(1, 1) = a[0] * s;
    out.at(1, -1) = a[1] * s;
    out.at(1, 0) = a[2] * s;
  } else if (a[0] != 0.0 || a[1] != 0.0 || a[2] != 0.0) {
    throw SizingError("degree cap 0 cannot represent coordinate functions");
  }
  return out;
}

}  // namespace wy
