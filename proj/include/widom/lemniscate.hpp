#pragma once

#include <cstddef>

#include "widom/grid.hpp"
#include "widom/lemniscate_spec.hpp"
#include "widom/minimax.hpp"
#include "widom/weights.hpp"

namespace widom {

/// (r sin(alpha/2))^{1/m}
double capacity_lemniscate(const LemniscateSpec& spec);

/// Weighted arc problem equivalent to degree nm + l on the lemniscatic arc:
///   ||T_{nm+l}||_E = scale * ||w T_n^{w}||_arc.
struct ReducedProblem {
  int degree = 0;
  WeightSpec weight;
  double scale = 1.0;
};

ReducedProblem reduce(const LemniscateSpec& spec, int n);

/// z -> z^l r^n T_n((z^m + 1) / r) built from a monic arc solution of degree n.
class LemniscatePolynomial {
 public:
  LemniscatePolynomial(PolySolution arc_solution, const LemniscateSpec& spec);

  cplx operator()(cplx z) const;
  int degree() const { return arc_.degree * spec_.m + spec_.l; }

 private:
  PolySolution arc_;
  LemniscateSpec spec_;
};

LemniscatePolynomial reconstruct_poly(const PolySolution& arc_solution, const LemniscateSpec& spec, int n);

struct ComparisonRecord {
  int n = 0;
  int direct_degree = 0;
  double direct_norm = 0.0;
  double reduced_norm = 0.0;
  double scale = 1.0;
  /// |direct - scale * reduced| / direct
  double gap = 0.0;
  double widom_direct = 0.0;
  /// scale * reduced_norm / cap^{nm+l}
  double widom_reduced = 0.0;
  /// Limit 2 cos^2(alpha/4) c(r, alpha)^{l/m} of the subsequence.
  double widom_predicted = 0.0;
  double direct_certificate = 0.0;
  double reduced_certificate = 0.0;
  bool converged = false;
  /// Set when 0 < |r - 1| < 1e-3.
  bool near_singular = false;
};

/// Solves degree nm + l directly on the lemniscate grid and degree n on the arc with the
/// reduced weight; both grids share the same theta nodes. The two solves run concurrently.
ComparisonRecord direct_vs_reduced(const LemniscateSpec& spec, int n, std::size_t theta_nodes,
                                   GridStrategy strategy = GridStrategy::chebyshev_theta,
                                   const SolverOptions& opts = {});

}  // namespace widom
