#include "widom/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <sstream>

#include "widom/arc_domain.hpp"
#include "widom/error.hpp"

namespace widom {

double periodic_mean(const std::function<double(double)>& f, const QuadratureOptions& opts) {
  const double two_pi = 2.0 * kPi;
  int n = std::max(opts.min_nodes, 4);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += f(two_pi * k / n);
  double mean = sum / n;
  while (2 * n <= opts.max_nodes) {
    // Midpoints of the current rule complete the doubled rule.
    double mid = 0.0;
    for (int k = 0; k < n; ++k) mid += f(two_pi * (k + 0.5) / n);
    sum += mid;
    n *= 2;
    const double next = sum / n;
    if (std::abs(next - mean) < opts.tolerance) return next;
    mean = next;
  }
  std::ostringstream os;
  os << "trapezoidal rule not converged with " << n << " nodes";
  throw Error(ErrorCode::quadrature_failure, os.str());
}

double periodic_mean_split(const std::function<double(double)>& f, std::vector<double> breakpoints,
                           const QuadratureOptions& opts) {
  if (breakpoints.empty()) return periodic_mean(f, opts);
  const double two_pi = 2.0 * kPi;
  for (auto& b : breakpoints) {
    b = std::fmod(b, two_pi);
    if (b < 0.0) b += two_pi;
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<double> cuts;
  for (double b : breakpoints)
    if (cuts.empty() || b - cuts.back() > 1e-13) cuts.push_back(b);
  if (cuts.size() > 1 && cuts.front() + two_pi - cuts.back() <= 1e-13) cuts.pop_back();

  thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  const double panel_tol = std::min(1e-12, opts.tolerance * 1e-3);
  double total = 0.0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts.front() + two_pi;
    double err = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    try {
      value = integrator.integrate(f, a, b, panel_tol, &err, &l1);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::quadrature_failure, std::string("panel integration failed: ") + e.what());
    }
    if (!std::isfinite(value) || err / two_pi > opts.tolerance) {
      std::ostringstream os;
      os << "panel [" << a << ", " << b << "] error estimate " << err / two_pi;
      throw Error(ErrorCode::quadrature_failure, os.str());
    }
    total += value;
  }
  return total / two_pi;
}

}  // namespace widom
