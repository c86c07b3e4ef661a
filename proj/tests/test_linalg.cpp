#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "wy/errors.hpp"
#include "wy/linalg.hpp"

using namespace wy;

namespace {

DenseMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> n01(0.0, 1.0);
  DenseMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = n01(rng);
  }
  return a;
}

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.rows(); ++j) m(i, j) = a(i, j);
  }
  return m;
}

}  // namespace

TEST_CASE("dense matrix helpers") {
  DenseMatrix a(3);
  a(0, 1) = 1.0;
  a(1, 0) = 3.0;
  a(2, 2) = 4.0;
  CHECK(a.asymmetry() == 2.0);
  a.symmetrize();
  CHECK(a(0, 1) == 2.0);
  CHECK(a(1, 0) == 2.0);
  CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(24.0)));
  const std::vector<std::size_t> idx{0, 2};
  const DenseMatrix s = a.submatrix(idx);
  CHECK(s(1, 1) == 4.0);
  CHECK(s(0, 1) == 0.0);
  const std::vector<double> v{1.0, 1.0, 1.0};
  const auto av = a.multiply(v);
  CHECK(av[0] == 2.0);
  CHECK(av[2] == 4.0);
  CHECK_THROWS_AS(a.multiply(idx.size() == 2 ? std::vector<double>{1.0} : v), ShapeMismatch);
}

TEST_CASE("Jacobi matches Eigen's symmetric solver") {
  std::mt19937_64 rng(wy::testing::kDefaultSeed);
  for (std::size_t n : {1u, 2u, 7u, 30u, 80u}) {
    const DenseMatrix a = random_symmetric(rng, n);
    const SymmetricEigen e = jacobi_eigen(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(to_eigen(a));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(e.values[i] - ref.eigenvalues()(static_cast<Eigen::Index>(i))) < 1e-12 * n);
    }
    // A v = lambda v and orthonormal columns
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = e.vectors(k, j);
      const auto av = a.multiply(v);
      double res = 0.0;
      double nrm = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        res = std::max(res, std::abs(av[k] - e.values[j] * v[k]));
        nrm += v[k] * v[k];
      }
      CHECK(res < 1e-11 * n);
      CHECK(std::abs(nrm - 1.0) < 1e-12);
    }
    for (std::size_t i = 1; i < n; ++i) CHECK(e.values[i] >= e.values[i - 1]);
  }
}

TEST_CASE("graded matrix keeps its small eigenvalue to relative accuracy") {
  // [[eps, d], [d, 1]] has small eigenvalue (eps - d^2) / (1 + ...) computed stably below.
  const double eps = 1e-12;
  const double d = 1e-7;
  DenseMatrix a(2);
  a(0, 0) = eps;
  a(1, 1) = 1.0;
  a(0, 1) = a(1, 0) = d;
  const double tr = 1.0 + eps;
  const double det = eps - d * d;
  const double big = 0.5 * (tr + std::sqrt((1.0 - eps) * (1.0 - eps) + 4.0 * d * d));
  const double small = det / big;
  const SymmetricEigen e = jacobi_eigen(a);
  CHECK(std::abs(e.values[0] - small) < 1e-10 * std::abs(small));
}

TEST_CASE("sweep cap raises EigenNonConvergence") {
  std::mt19937_64 rng(wy::testing::kDefaultSeed + 1);
  const DenseMatrix a = random_symmetric(rng, 20);
  try {
    (void)jacobi_eigen(a, 1e-12, 1);
    FAIL("expected non-convergence");
  } catch (const EigenNonConvergence& e) {
    CHECK(e.sweeps() == 1);
  }
  DenseMatrix diag(3);
  diag(0, 0) = 3.0;
  diag(1, 1) = -1.0;
  const SymmetricEigen e = jacobi_eigen(diag, 1e-12, 1);
  CHECK(e.values[0] == -1.0);
  CHECK(e.sweeps == 1);
}

TEST_CASE("Cholesky solve") {
  std::mt19937_64 rng(wy::testing::kDefaultSeed + 2);
  const std::size_t n = 25;
  const DenseMatrix g = random_symmetric(rng, n);
  DenseMatrix spd(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += g(i, k) * g(j, k);
      spd(i, j) = s + (i == j ? 1.0 : 0.0);
    }
  }
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = std::sin(1.0 + i);
  const auto x = cholesky_solve(spd, b);
  const auto ax = spd.multiply(x);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ax[i] - b[i]) < 1e-10);

  DenseMatrix indef(2);
  indef(0, 0) = 1.0;
  indef(1, 1) = -1.0;
  CHECK_THROWS_AS(cholesky_solve(indef, std::vector<double>{1.0, 1.0}), DomainError);
  // a shift can make it definite
  const auto xs = cholesky_solve(indef, std::vector<double>{1.0, 1.0}, 2.0);
  CHECK(xs[0] == doctest::Approx(1.0 / 3.0));
  CHECK(xs[1] == doctest::Approx(1.0));
}
