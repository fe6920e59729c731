#pragma once

#include <Eigen/Dense>
#include <span>

#include "widom/complex_point.hpp"

namespace widom {

/// Polynomial basis q_0, ..., q_n orthonormal for a discrete inner product on a point set,
/// generated by the Arnoldi recurrence
///   H(k+1,k) q_{k+1}(z) = z q_k(z) - sum_{i<=k} H(i,k) q_i(z).
/// The recurrence data (H and the constant q_0) is enough to evaluate the basis anywhere.
class ArnoldiBasis {
 public:
  ArnoldiBasis() = default;

  /// Builds the basis up to degree n for <f, g> = sum_j measure_j f(x_j) conj(g(x_j)).
  /// The measure is normalized to total mass one.
  ArnoldiBasis(std::span<const cplx> points, std::span<const double> measure, int degree);

  int degree() const { return degree_; }
  const Eigen::MatrixXcd& hessenberg() const { return h_; }
  double q0() const { return q0_; }

  /// Basis values at the construction points (N x (n+1)).
  const Eigen::MatrixXcd& values() const { return q_; }

  /// Values q_0(z), ..., q_n(z).
  Eigen::VectorXcd evaluate(cplx z) const;
  /// Basis values at arbitrary points (rows) computed by the recurrence.
  Eigen::MatrixXcd evaluate(std::span<const cplx> z) const;

  /// Leading (monomial) coefficients of q_0, ..., q_n.
  Eigen::VectorXd leading_coefficients() const;

  /// Column k holds the monomial coefficients of q_k (ascending powers).
  Eigen::MatrixXcd monomial_coefficients() const;

  /// Values q_k(u0) for a finite u0, or the leading coefficients at infinity.
  Eigen::VectorXcd evaluate(const ComplexPoint& u0) const;

 private:
  int degree_ = 0;
  double q0_ = 1.0;
  Eigen::MatrixXcd h_;
  Eigen::MatrixXcd q_;
};

}  // namespace widom
