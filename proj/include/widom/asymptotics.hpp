#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "widom/arc_domain.hpp"
#include "widom/complex_point.hpp"
#include "widom/lemniscate_spec.hpp"
#include "widom/quadrature.hpp"
#include "widom/weights.hpp"

namespace widom {

enum class PredictionKind { widom_limit, pointwise_limit, lemniscate_limit, residual_modulus_profile };

const char* to_string(PredictionKind kind);

struct PredictionReport {
  PredictionKind kind = PredictionKind::widom_limit;
  double value = 0.0;
  /// Szego-type lower bound and twice that as upper bound, for the Widom-type kinds.
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  /// Named constituents: capacity, alpha_constant, log_integral, kernel, c_factor.
  std::map<std::string, double> components;
  /// (u, limit modulus) samples for residual_modulus_profile.
  std::vector<std::pair<ComplexPoint, double>> profile;
};

/// 2 cos^2(alpha/4)
double alpha_constant(const ArcDomain& domain);

/// Limit of the weighted Widom factors: 2 cos^2(alpha/4) exp(int log w d mu).
PredictionReport predict_widom_limit(const ArcDomain& domain, const WeightSpec& weight,
                                     const QuadratureOptions& opts = {});

/// Limit of e^{n g(u0)} ||w T_n(., u0)||: exp(int log w d omega(u0)) / k(u0, u0).
/// At u0 = inf the Widom-limit report is returned.
PredictionReport predict_pointwise_limit(const ArcDomain& domain, const WeightSpec& weight, ComplexPoint u0,
                                         const QuadratureOptions& opts = {});

/// 2 cos^2(alpha/4) c(r, alpha)^{l/m} with bounds [c^{l/m}, 2 c^{l/m}].
PredictionReport predict_lemniscate_limit(const LemniscateSpec& spec);

/// Modulus of the locally uniform limit of e^{-n g(u)} R_n(u, u0) for u0 in the open unit disk:
///   |lambda^2 + lambda0^2|^2 / (2 |lambda^2 + |lambda0|^2|^2) * |F_w(u)|.
/// Throws U0OutsideDisk for |u0| >= 1 and PointOnArc for points on the arc.
double limit_residual_modulus(const ArcDomain& domain, const WeightSpec& weight, ComplexPoint u, ComplexPoint u0,
                              const QuadratureOptions& opts = {});

/// limit_residual_modulus sampled at the given points.
PredictionReport predict_residual_profile(const ArcDomain& domain, const WeightSpec& weight, ComplexPoint u0,
                                          std::span<const ComplexPoint> points, const QuadratureOptions& opts = {});

/// (exp(I), 2 exp(I)) with I = int log w d mu.
std::pair<double, double> szego_widom_bounds(const ArcDomain& domain, const WeightSpec& weight,
                                             const QuadratureOptions& opts = {});

struct Extrapolation {
  double limit = 0.0;
  /// Largest absolute fit residual divided by max(1, |limit|).
  double residual = 0.0;
  /// Model coefficients (L, a) or (L, a, b).
  std::vector<double> coefficients;
};

/// Least-squares fit of value ~ L + a/n (+ b/n^2 with five or more entries).
/// Throws InvalidArgument for fewer than three entries or non-increasing n, and
/// IllConditionedFit when the scaled design matrix has condition number above 1e8.
Extrapolation richardson_extrapolate(std::span<const std::pair<int, double>> values);

}  // namespace widom
