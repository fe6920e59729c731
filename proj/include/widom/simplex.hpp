#pragma once

#include <Eigen/Dense>

namespace widom {

struct LpResult {
  double objective = 0.0;
  Eigen::VectorXd x;
  int pivots = 0;
};

/// Dense two-phase simplex for  min c'x  s.t.  A x = b,  x >= 0.
/// Dantzig pricing with a switch to Bland's rule after a run of degenerate pivots.
/// Throws LPFailure when the program is infeasible, unbounded, or stalls.
LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace widom
