#pragma once

// Real orthonormal spherical harmonics sampled on a SphereGrid.
//
// Convention: no Condon-Shortley phase. For degree l and order m in [-l, l]
//   Y_l0    = N_l0 P_l(cos t)
//   Y_lm    = sqrt(2) N_lm P_l^m(cos t) cos(m p)      (m > 0)
//   Y_l,-m  = sqrt(2) N_lm P_l^m(cos t) sin(m p)      (m > 0)
// with P_l^m >= 0 near the north pole, so the degree-one functions are
//   Y_1,-1 = c x2,  Y_10 = c x3,  Y_11 = c x1,  c = sqrt(3 / (4 pi)).
// Flat index: l*l + l + m.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "wy/quad.hpp"

namespace wy {

constexpr int harmonic_count(int L) noexcept { return (L + 1) * (L + 1); }
constexpr int harmonic_index(int l, int m) noexcept { return l * l + l + m; }

/// Coefficients of a band-limited field in the real harmonic basis.
struct FieldCoeffs {
  int L = 0;
  std::vector<double> c;

  FieldCoeffs() = default;
  explicit FieldCoeffs(int degree_cap);
  FieldCoeffs(int degree_cap, std::vector<double> values);

  double& at(int l, int m) { return c[static_cast<std::size_t>(harmonic_index(l, m))]; }
  double at(int l, int m) const { return c[static_cast<std::size_t>(harmonic_index(l, m))]; }
  std::size_t size() const noexcept { return c.size(); }

  FieldCoeffs& operator+=(const FieldCoeffs& other);
  FieldCoeffs& operator-=(const FieldCoeffs& other);
  FieldCoeffs& operator*=(double s);
};

FieldCoeffs operator+(FieldCoeffs a, const FieldCoeffs& b);
FieldCoeffs operator-(FieldCoeffs a, const FieldCoeffs& b);
FieldCoeffs operator*(double s, FieldCoeffs a);

/// Per-node values with theta and phi partial derivatives.
struct FieldSamples {
  std::vector<double> value;
  std::vector<double> dtheta;
  std::vector<double> dphi;
};

class HarmonicBasis {
 public:
  /// Throws SizingError if the grid is not exact to degree 2L.
  HarmonicBasis(const SphereGrid& grid, int L);

  int L() const noexcept { return L_; }
  int size() const noexcept { return harmonic_count(L_); }
  const SphereGrid& grid() const noexcept { return *grid_; }

  int degree(int index) const noexcept { return degrees_[static_cast<std::size_t>(index)]; }
  int order(int index) const noexcept { return orders_[static_cast<std::size_t>(index)]; }
  /// l(l+1) for the given flat index.
  double eigenvalue(int index) const noexcept {
    const double l = degree(index);
    return l * (l + 1.0);
  }

  std::span<const double> values(int index) const noexcept { return row(values_, index); }
  std::span<const double> dtheta(int index) const noexcept { return row(dtheta_, index); }
  std::span<const double> dphi(int index) const noexcept { return row(dphi_, index); }

  /// Values and derivatives of the field with the given coefficients.
  FieldSamples sample(const FieldCoeffs& coeffs) const;

 private:
  std::span<const double> row(const std::vector<double>& table, int index) const noexcept {
    const std::size_t n = grid_->size();
    return {table.data() + static_cast<std::size_t>(index) * n, n};
  }

  const SphereGrid* grid_;
  int L_;
  std::vector<int> degrees_;
  std::vector<int> orders_;
  std::vector<double> values_;
  std::vector<double> dtheta_;
  std::vector<double> dphi_;
};

/// The grid must outlive the basis.
HarmonicBasis build_basis(const SphereGrid& grid, int L);

/// c_i = integral of field * Y_i.
FieldCoeffs analyze(const HarmonicBasis& basis, std::span<const double> field);

/// Throws ShapeMismatch if coeffs.L exceeds the basis degree cap.
std::vector<double> synthesize(const HarmonicBasis& basis, const FieldCoeffs& coeffs);

/// Spectral Laplace-Beltrami operator: coefficient (l, m) times -l(l+1).
FieldCoeffs laplacian(const FieldCoeffs& coeffs);

enum class SubspaceKind { Kernel, Eigenspace, KernelComplement };

/// Kernel = degrees {0, 1}; Eigenspace(k) = degree k; KernelComplement = degrees >= 2.
struct Subspace {
  SubspaceKind kind = SubspaceKind::Kernel;
  int k = 0;

  static Subspace kernel() { return {SubspaceKind::Kernel, 0}; }
  static Subspace eigenspace(int k) { return {SubspaceKind::Eigenspace, k}; }
  static Subspace kernel_complement() { return {SubspaceKind::KernelComplement, 0}; }

  bool contains_degree(int l) const noexcept;
};

FieldCoeffs project(const FieldCoeffs& coeffs, Subspace subspace);

/// Pointwise <grad u, grad v> = u_t v_t + u_p v_p / sin^2(t).
std::vector<double> gradient_dot(const SphereGrid& grid, const FieldSamples& u,
                                 const FieldSamples& v);

/// Coefficients of a0 + a1 x1 + a2 x2 + a3 x3.
FieldCoeffs kernel_coeffs(int L, double a0, const std::array<double, 3>& a);

/// Largest absolute coefficient with degree outside the subspace.
double leakage(const FieldCoeffs& coeffs, Subspace subspace);

}  // namespace wy
