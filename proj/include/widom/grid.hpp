#pragma once

#include <cstddef>
#include <vector>

#include "widom/arc_domain.hpp"
#include "widom/complex_point.hpp"
#include "widom/lemniscate_spec.hpp"
#include "widom/weights.hpp"

namespace widom {

enum class GridStrategy { chebyshev_theta, uniform_theta, hybrid };

const char* to_string(GridStrategy s);
GridStrategy grid_strategy_from_string(const std::string& s);

/// Discretization of an arc or lemniscatic arc with cached weight values.
struct Grid {
  std::vector<cplx> points;
  /// Arc angle theta of each point.
  std::vector<double> params;
  /// Branch index (m-th root) for lemniscate grids, 0 on arcs.
  std::vector<int> branch;
  std::vector<double> weight_values;
  GridStrategy strategy = GridStrategy::chebyshev_theta;
  /// Set when the size is below 8 * degree + 16.
  bool undersized = false;

  std::size_t size() const { return points.size(); }
};

/// Angles theta_j in [-alpha, alpha] for the given strategy.
std::vector<double> grid_angles(double alpha, std::size_t size, GridStrategy strategy);

/// Arc grid with the weight cached. Nodes with negative exponent on the arc are removed and
/// surrounded by geometrically graded points (ratio 2, 16 levels).
/// Throws SizeTooSmall if size < intended_degree + 2.
Grid build_grid(const ArcDomain& domain, std::size_t size, GridStrategy strategy,
                const WeightSpec& weight = WeightSpec::unit(), int intended_degree = 0);

/// Lemniscate grid: all m-th roots of r e^{i theta_j} - 1 (coincident roots merged), unit weight.
Grid build_grid(const LemniscateSpec& spec, std::size_t size, GridStrategy strategy,
                int intended_degree = 0);

/// Default arc grid size max(16n + 64, 1024).
std::size_t default_grid_size(int degree);

}  // namespace widom
