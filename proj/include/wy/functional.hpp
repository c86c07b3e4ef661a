#pragma once

// The second-variation functional F and its polarization Q on the unit round
// sphere, where the embedding data are H0 = 2, II0 = metric and nu0 = x:
//
//   F(eta) = integral of (Delta eta)^2 / H + (1 - H) |grad eta|^2.
//
// Evaluation uses the equivalent split
//
//   F(eta) = sum_lm c_lm^2 (mu_l^2 / 2 - mu_l)
//          + integral of (2 - H) [ (Delta eta)^2 / (2H) + |grad eta|^2 ],
//
// whose first term is exact and whose second term is proportional to the
// deficit 2 - H. Near H = 2 this avoids cancelling O(1) integrals against
// each other, which matters when F is O(r^4) with r = 1e-3.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wy/harmonics.hpp"
#include "wy/linalg.hpp"
#include "wy/quad.hpp"

namespace wy {

inline constexpr double kRoundMeanCurvature = 2.0;

/// A positive function H on the grid, stored together with the deficit 2 - H.
class MeanCurvatureField {
 public:
  /// Throws DomainError unless every sample is positive and finite.
  static MeanCurvatureField from_samples(const SphereGrid& grid, std::vector<double> h,
                                         std::string tag = "samples");
  /// Builds H = 2 - deficit while keeping the deficit samples as given.
  static MeanCurvatureField from_deficit(const SphereGrid& grid, std::vector<double> deficit,
                                         std::string tag = "deficit");
  static MeanCurvatureField constant(const SphereGrid& grid, double value);

  std::span<const double> samples() const noexcept { return h_; }
  std::span<const double> deficit() const noexcept { return deficit_; }
  double inf_h() const noexcept { return inf_; }
  double sup_h() const noexcept { return sup_; }
  const std::string& tag() const noexcept { return tag_; }
  std::size_t size() const noexcept { return h_.size(); }

 private:
  MeanCurvatureField(std::vector<double> h, std::vector<double> deficit, std::string tag);

  std::vector<double> h_;
  std::vector<double> deficit_;
  double inf_ = 0.0;
  double sup_ = 0.0;
  std::string tag_;
};

double eval_F(const HarmonicBasis& basis, const MeanCurvatureField& h, const FieldCoeffs& eta);

double eval_Q(const HarmonicBasis& basis, const MeanCurvatureField& h, const FieldCoeffs& eta1,
              const FieldCoeffs& eta2);

/// |a|^2 * integral(2 - H) + integral(<a, x>^2 (2 - H)^2 / H); a0 drops out.
double F_on_kernel_closed_form(const SphereGrid& grid, const MeanCurvatureField& h, double a0,
                               const std::array<double, 3>& a);

/// M_ij = Q(Y_i, Y_j) and K_ij = mu_i^2 delta_ij over basis indices of degree >= 1.
struct HessianPencil {
  DenseMatrix M;
  std::vector<double> K;
  int L = 0;
  /// Flat harmonic index for each pencil row.
  std::vector<int> index;
  std::vector<int> degree;
};

HessianPencil assemble_pencil(const HarmonicBasis& basis, const MeanCurvatureField& h);

struct PencilMinimum {
  double value = 0.0;
  /// Eigenvector in field coefficients, normalized so integral (Delta eta)^2 = 1.
  FieldCoeffs witness;
  int sweeps = 0;
};

/// Smallest lambda with M v = lambda K v, via the congruence K^{-1/2} M K^{-1/2}.
/// With restrict_to_kernel_complement the degree-one rows are dropped.
PencilMinimum min_pencil_eigenvalue(const HessianPencil& pencil,
                                    bool restrict_to_kernel_complement,
                                    double tol = 1e-12, int max_sweeps = 100);

struct KernelDecomposition {
  double a0 = 0.0;
  std::array<double, 3> a{0.0, 0.0, 0.0};
  FieldCoeffs eta2;
};

/// eta = a0 + sum a_i x_i + eta2 with eta2 supported on degrees >= 2.
KernelDecomposition decompose_kernel(const FieldCoeffs& eta);

/// Integral of (Delta eta)^2, exact in coefficient space.
double laplacian_energy(const FieldCoeffs& eta);

}  // namespace wy
