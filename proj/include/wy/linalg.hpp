#pragma once

// Small dense symmetric linear algebra: cyclic Jacobi eigensolver and a
// Cholesky solve. Matrices here are at most a few hundred rows.

#include <cstddef>
#include <span>
#include <vector>

namespace wy {

/// Row-major square matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t rows() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }

  /// Largest |a_ij - a_ji|.
  double asymmetry() const noexcept;
  double frobenius_norm() const noexcept;
  /// Replace with (A + A^T) / 2.
  void symmetrize() noexcept;
  /// Principal submatrix on the given indices.
  DenseMatrix submatrix(std::span<const std::size_t> idx) const;

  std::vector<double> multiply(std::span<const double> v) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  DenseMatrix vectors;         // column j is the eigenvector for values[j]
  int sweeps = 0;
};

/// Cyclic Jacobi with a relative rotation threshold: entry (p, q) is
/// annihilated while |a_pq| > tol * sqrt(|a_pp a_qq|). Keeps small eigenvalues
/// of graded matrices accurate relative to their own size.
/// Throws EigenNonConvergence after max_sweeps.
SymmetricEigen jacobi_eigen(DenseMatrix a, double tol = 1e-12, int max_sweeps = 100);

/// Solves (A + shift I) x = b for symmetric positive definite A.
/// Throws DomainError if the factorization meets a nonpositive pivot.
std::vector<double> cholesky_solve(const DenseMatrix& a, std::span<const double> b,
                                   double shift = 0.0);

}  // namespace wy
