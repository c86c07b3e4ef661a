#pragma once

#include <stdexcept>
#include <string>

namespace wy {

/// Grid or basis dimensions that cannot support the requested operation.
class SizingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two inputs that must agree in shape (field length, degree cap) do not.
class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input violates a documented domain invariant (trace-free eigenvalues,
/// positive mean curvature, unit direction, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The Jacobi eigensolver hit its sweep cap before the off-diagonal part
/// dropped below tolerance.
class EigenNonConvergence : public std::runtime_error {
 public:
  EigenNonConvergence(int sweeps, double off_norm)
      : std::runtime_error("Jacobi eigensolver did not converge after " +
                           std::to_string(sweeps) + " sweeps (off-diagonal norm " +
                           std::to_string(off_norm) + ")"),
        sweeps_(sweeps) {}
  int sweeps() const noexcept { return sweeps_; }

 private:
  int sweeps_;
};

/// A quantity that is positive by construction came out nonpositive.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wy
