#pragma once

#include <Eigen/Dense>
#include <vector>

#include "widom/arnoldi.hpp"
#include "widom/complex_point.hpp"
#include "widom/grid.hpp"

namespace widom {

/// Affine constraint selecting T_n(., u0): P(u0) = 1, or leading coefficient 1 when u0 = inf.
class Normalization {
 public:
  static Normalization monic() { return Normalization(ComplexPoint::infinity()); }
  static Normalization at(ComplexPoint u0) { return Normalization(u0); }

  bool is_monic() const { return target_.is_infinite(); }
  const ComplexPoint& target() const { return target_; }

 private:
  explicit Normalization(ComplexPoint u0) : target_(u0) {}
  ComplexPoint target_;
};

struct SolverOptions {
  int max_iterations = 1000;
  /// Lawson stops when the relative change of the norm drops below this.
  double norm_change_tol = 1e-10;
  /// Solutions with a certificate at or below this are grid-optimal.
  double certificate_tol = 1e-6;
  /// Relative threshold delta defining the extremal set.
  double extremal_delta = 1e-6;
  /// Relative Lawson duality gap at which the interior-point polish takes over.
  double handoff_gap = 1e-2;
  /// Run the interior-point polish after the Lawson phase.
  bool polish = true;
};

/// Weighted minimax polynomial on a grid, stored in an on-grid orthonormal basis.
struct PolySolution {
  int degree = 0;
  Normalization normalization = Normalization::monic();
  ArnoldiBasis basis;
  /// Coefficients of P in the basis q_0..q_n.
  Eigen::VectorXcd coefficients;
  /// max_j w_j |P(x_j)|
  double norm = 0.0;
  /// Lawson lower bound on the grid optimum.
  double lower_bound = 0.0;
  std::vector<std::size_t> extremal_set;
  double certificate = 0.0;
  int iterations = 0;
  bool converged = false;

  cplx operator()(cplx z) const;
  /// Leading monomial coefficient, i.e. P(inf).
  cplx leading_coefficient() const;
  /// Ascending monomial coefficients recovered from the recurrence (ill-conditioned for large n).
  Eigen::VectorXcd monomial_coefficients() const;
};

/// Minimizes max_j w_j |P(x_j)| over polynomials of the given degree under the normalization.
/// Lawson iteratively reweighted least squares followed by an interior-point polish of the
/// second-order-cone form. Non-convergence is reported through PolySolution::converged.
PolySolution solve_minimax(const Grid& grid, int degree, Normalization normalization,
                           const SolverOptions& opts = {});

/// Largest first-order relative decrease of the norm achievable by an admissible direction
/// with box-bounded basis coefficients; 0 certifies grid optimality.
double optimality_certificate(const PolySolution& solution, const Grid& grid,
                              double extremal_delta = 1e-6);

/// Wraps a given polynomial (ascending monomial coefficients) as a solution on the grid.
PolySolution solution_from_monomials(const Grid& grid, const Eigen::VectorXcd& monomial,
                                     Normalization normalization, double extremal_delta = 1e-6);

/// Bracket from the polygonal linear-programming oracle.
struct OracleBracket {
  double lower = 0.0;
  double upper = 0.0;
  double value() const { return lower; }
};

/// Independent grid-minimax value via the LP  min t  s.t.  Re[e^{2 pi i k/K} w_j P(x_j)] <= t
/// in the monomial basis. Limited to degree <= 3 and at most 256 grid points.
OracleBracket brute_oracle_minimax(const Grid& grid, int degree, Normalization normalization,
                                   int polygon_sides = 128);

/// norm / cap^degree for a monic solution.
double widom_factor(const PolySolution& solution, double capacity);

/// R_n(u0, u0) = 1 / norm for a solution normalized at u0.
double residual_value(const PolySolution& solution, ComplexPoint u0);

}  // namespace widom
