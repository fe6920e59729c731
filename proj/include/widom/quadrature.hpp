#pragma once

#include <functional>
#include <vector>

namespace widom {

struct QuadratureOptions {
  /// Absolute tolerance on the normalized integral (1/2pi) * int f.
  double tolerance = 1e-9;
  int min_nodes = 512;
  int max_nodes = 65536;
};

/// Mean value (1/2pi) int_0^{2pi} f over one period by the trapezoidal rule, doubling
/// the node count until successive values agree. Throws QuadratureFailure when the
/// node budget runs out.
double periodic_mean(const std::function<double(double)>& f, const QuadratureOptions& opts = {});

/// Same mean value for an integrand with integrable endpoint singularities or kinks at
/// the given angles (taken mod 2pi). The period is split at the breakpoints and every
/// panel is integrated by double-exponential quadrature.
double periodic_mean_split(const std::function<double(double)>& f, std::vector<double> breakpoints,
                           const QuadratureOptions& opts = {});

}  // namespace widom
