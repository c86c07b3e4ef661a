#include "wy/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wy/errors.hpp"

namespace wy {

MeanCurvatureField::MeanCurvatureField(std::vector<double> h, std::vector<double> deficit,
                                       std::string tag)
    : h_(std::move(h)), deficit_(std::move(deficit)), tag_(std::move(tag)) {
  inf_ = std::numeric_limits<double>::infinity();
  sup_ = -std::numeric_limits<double>::infinity();
  for (double v : h_) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw DomainError("mean curvature must be positive and finite everywhere, got " +
                        std::to_string(v));
    }
    inf_ = std::min(inf_, v);
    sup_ = std::max(sup_, v);
  }
}

MeanCurvatureField MeanCurvatureField::from_samples(const SphereGrid& grid, std::vector<double> h,
                                                    std::string tag) {
  if (h.size() != grid.size()) throw ShapeMismatch("mean curvature samples do not match grid");
  std::vector<double> d(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) d[k] = kRoundMeanCurvature - h[k];
  return MeanCurvatureField(std::move(h), std::move(d), std::move(tag));
}

MeanCurvatureField MeanCurvatureField::from_deficit(const SphereGrid& grid,
                                                    std::vector<double> deficit,
                                                    std::string tag) {
  if (deficit.size() != grid.size()) throw ShapeMismatch("deficit samples do not match grid");
  std::vector<double> h(deficit.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = kRoundMeanCurvature - deficit[k];
  return MeanCurvatureField(std::move(h), std::move(deficit), std::move(tag));
}

MeanCurvatureField MeanCurvatureField::constant(const SphereGrid& grid, double value) {
  return from_deficit(grid, std::vector<double>(grid.size(), kRoundMeanCurvature - value),
                      "constant");
}

namespace {

void require_matching(const HarmonicBasis& basis, const MeanCurvatureField& h) {
  if (h.size() != basis.grid().size()) {
    throw ShapeMismatch("mean curvature field and basis live on different grids");
  }
}

// sum c_i d_i (mu^2/2 - mu): the exact H = 2 part of Q.
double round_part(const FieldCoeffs& u, const FieldCoeffs& v) {
  if (u.L != v.L) throw ShapeMismatch("degree caps differ");
  double s = 0.0;
  for (int l = 1; l <= u.L; ++l) {
    const double mu = l * (l + 1.0);
    const double f = 0.5 * mu * mu - mu;
    for (int m = -l; m <= l; ++m) s += f * u.at(l, m) * v.at(l, m);
  }
  return s;
}

}  // namespace

double eval_Q(const HarmonicBasis& basis, const MeanCurvatureField& h, const FieldCoeffs& eta1,
              const FieldCoeffs& eta2) {
  require_matching(basis, h);
  if (eta1.L > basis.L() || eta2.L > basis.L() || eta1.L != eta2.L) {
    throw ShapeMismatch("field degree caps do not match the basis");
  }
  const auto& grid = basis.grid();
  const FieldSamples u = basis.sample(eta1);
  const FieldSamples v = basis.sample(eta2);
  const std::vector<double> lu = synthesize(basis, laplacian(eta1));
  const std::vector<double> lv = synthesize(basis, laplacian(eta2));
  const std::vector<double> g = gradient_dot(grid, u, v);

  const auto d = h.deficit();
  const auto hs = h.samples();
  std::vector<double> integrand(grid.size());
  for (std::size_t k = 0; k < integrand.size(); ++k) {
    integrand[k] = d[k] * (lu[k] * lv[k] / (2.0 * hs[k]) + g[k]);
  }
  return round_part(eta1, eta2) + integrate(grid, integrand);
}

double eval_F(const HarmonicBasis& basis, const MeanCurvatureField& h, const FieldCoeffs& eta) {
  return eval_Q(basis, h, eta, eta);
}

double F_on_kernel_closed_form(const SphereGrid& grid, const MeanCurvatureField& h, double /*a0*/,
                               const std::array<double, 3>& a) {
  if (h.size() != grid.size()) throw ShapeMismatch("mean curvature field does not match grid");
  const double a2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
  const auto d = h.deficit();
  const auto hs = h.samples();
  const auto xyz = grid.xyz();
  std::vector<double> second(grid.size());
  for (std::size_t k = 0; k < second.size(); ++k) {
    const double ax = a[0] * xyz[k][0] + a[1] * xyz[k][1] + a[2] * xyz[k][2];
    second[k] = ax * ax * d[k] * d[k] / hs[k];
  }
  return a2 * integrate(grid, d) + integrate(grid, second);
}

HessianPencil assemble_pencil(const HarmonicBasis& basis, const MeanCurvatureField& h) {
  require_matching(basis, h);
  if (basis.L() < 2) throw SizingError("pencil assembly needs a basis with L >= 2");

  const auto& grid = basis.grid();
  const std::size_t nn = grid.size();
  const auto w = grid.weights();
  const auto d = h.deficit();
  const auto hs = h.samples();
  const auto s = grid.sin_theta();

  // Weighted node factors for the Laplacian and gradient terms.
  std::vector<double> wlap(nn);
  std::vector<double> wgrad(nn);
  std::vector<double> wphi(nn);
  for (std::size_t k = 0; k < nn; ++k) {
    wlap[k] = w[k] * d[k] / (2.0 * hs[k]);
    wgrad[k] = w[k] * d[k];
    wphi[k] = wgrad[k] / (s[k] * s[k]);
  }

  HessianPencil out;
  out.L = basis.L();
  for (int i = 1; i < basis.size(); ++i) {
    out.index.push_back(i);
    out.degree.push_back(basis.degree(i));
  }
  const std::size_t n = out.index.size();
  out.M = DenseMatrix(n);
  out.K.resize(n);

  for (std::size_t a = 0; a < n; ++a) {
    const int i = out.index[a];
    const double mui = basis.eigenvalue(i);
    out.K[a] = mui * mui;
    const auto yi = basis.values(i);
    const auto ti = basis.dtheta(i);
    const auto pi = basis.dphi(i);
    for (std::size_t b = a; b < n; ++b) {
      const int j = out.index[b];
      const double muj = basis.eigenvalue(j);
      const auto yj = basis.values(j);
      const auto tj = basis.dtheta(j);
      const auto pj = basis.dphi(j);
      double lap = 0.0;
      double grad = 0.0;
      for (std::size_t k = 0; k < nn; ++k) {
        lap += wlap[k] * yi[k] * yj[k];
        grad += wgrad[k] * ti[k] * tj[k] + wphi[k] * pi[k] * pj[k];
      }
      double value = mui * muj * lap + grad;
      if (a == b) value += 0.5 * mui * mui - mui;
      out.M(a, b) = value;
      out.M(b, a) = value;
    }
  }
  return out;
}

PencilMinimum min_pencil_eigenvalue(const HessianPencil& pencil,
                                    bool restrict_to_kernel_complement, double tol,
                                    int max_sweeps) {
  std::vector<std::size_t> rows;
  for (std::size_t a = 0; a < pencil.index.size(); ++a) {
    if (!restrict_to_kernel_complement || pencil.degree[a] >= 2) rows.push_back(a);
  }
  if (rows.empty()) throw SizingError("pencil has no rows in the requested block");

  DenseMatrix scaled = pencil.M.submatrix(rows);
  std::vector<double> inv_sqrt_k(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a) inv_sqrt_k[a] = 1.0 / std::sqrt(pencil.K[rows[a]]);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < rows.size(); ++b) scaled(a, b) *= inv_sqrt_k[a] * inv_sqrt_k[b];
  }
  scaled.symmetrize();

  const SymmetricEigen eig = jacobi_eigen(std::move(scaled), tol, max_sweeps);

  PencilMinimum out;
  out.value = eig.values.front();
  out.sweeps = eig.sweeps;
  out.witness = FieldCoeffs(pencil.L);
  for (std::size_t a = 0; a < rows.size(); ++a) {
    out.witness.c[static_cast<std::size_t>(pencil.index[rows[a]])] =
        eig.vectors(a, 0) * inv_sqrt_k[a];
  }
  return out;
}

KernelDecomposition decompose_kernel(const FieldCoeffs& eta) {
  KernelDecomposition out;
  out.a0 = eta.at(0, 0) / std::sqrt(4.0 * std::numbers::pi);
  if (eta.L >= 1) {
    const double s = std::sqrt(3.0 / (4.0 * std::numbers::pi));
    out.a = {eta.at(1, 1) * s, eta.at(1, -1) * s, eta.at(1, 0) * s};
  }
  out.eta2 = project(eta, Subspace::kernel_complement());
  return out;
}

double laplacian_energy(const FieldCoeffs& eta) {
  double s = 0.0;
  for (int l = 1; l <= eta.L; ++l) {
    const double mu = l * (l + 1.0);
    for (int m = -l; m <= l; ++m) s += mu * mu * eta.at(l, m) * eta.at(l, m);
  }
  return s;
}

}  // namespace wy
