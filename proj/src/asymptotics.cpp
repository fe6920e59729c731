#include "widom/asymptotics.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "widom/error.hpp"
#include "widom/potential.hpp"

namespace widom {

const char* to_string(PredictionKind kind) {
  switch (kind) {
    case PredictionKind::widom_limit:
      return "widom_limit";
    case PredictionKind::pointwise_limit:
      return "pointwise_limit";
    case PredictionKind::lemniscate_limit:
      return "lemniscate_limit";
    case PredictionKind::residual_modulus_profile:
      return "residual_modulus_profile";
  }
  return "unknown";
}

double alpha_constant(const ArcDomain& domain) {
  const double c = std::cos(domain.alpha() / 4);
  return 2 * c * c;
}

PredictionReport predict_widom_limit(const ArcDomain& domain, const WeightSpec& weight,
                                     const QuadratureOptions& opts) {
  const double integral = mu_log_integral(weight, domain, opts);
  const double szego = std::exp(integral);
  PredictionReport rep;
  rep.kind = PredictionKind::widom_limit;
  rep.value = alpha_constant(domain) * szego;
  rep.lower_bound = szego;
  rep.upper_bound = 2 * szego;
  rep.components = {{"capacity", capacity_arc(domain)},
                    {"alpha_constant", alpha_constant(domain)},
                    {"log_integral", integral}};
  return rep;
}

PredictionReport predict_pointwise_limit(const ArcDomain& domain, const WeightSpec& weight, ComplexPoint u0,
                                         const QuadratureOptions& opts) {
  if (u0.is_infinite()) return predict_widom_limit(domain, weight, opts);
  if (domain.on_arc(u0.value(), kArcExclusion))
    throw Error(ErrorCode::point_on_arc, "u0 lies on the arc");
  const double k = kernel_k(u0, u0, domain).real();
  const double integral = harmonic_measure_log_integral(weight, u0, domain, opts);
  PredictionReport rep;
  rep.kind = PredictionKind::pointwise_limit;
  rep.value = std::exp(integral) / k;
  rep.components = {{"capacity", capacity_arc(domain)},
                    {"alpha_constant", alpha_constant(domain)},
                    {"log_integral", integral},
                    {"kernel", k},
                    {"green", green_inf(u0, domain)}};
  return rep;
}

PredictionReport predict_lemniscate_limit(const LemniscateSpec& spec) {
  spec.validate();
  const ArcDomain arc = spec.arc();
  const double c_factor = std::pow(c_r_alpha(spec.r, arc), static_cast<double>(spec.l) / spec.m);
  PredictionReport rep;
  rep.kind = PredictionKind::lemniscate_limit;
  rep.value = alpha_constant(arc) * c_factor;
  rep.lower_bound = c_factor;
  rep.upper_bound = 2 * c_factor;
  rep.components = {{"capacity", spec.capacity()},
                    {"alpha_constant", alpha_constant(arc)},
                    {"c_factor", c_factor},
                    {"c_r_alpha", c_r_alpha(spec.r, arc)}};
  return rep;
}

double limit_residual_modulus(const ArcDomain& domain, const WeightSpec& weight, ComplexPoint u, ComplexPoint u0,
                              const QuadratureOptions& opts) {
  if (u0.is_infinite() || std::abs(u0.value()) >= 1.0)
    throw Error(ErrorCode::u0_outside_disk, "u0 must lie in the open unit disk");
  const cplx l0 = lambda_map(u0, domain).value();
  const cplx l = lambda_map(u, domain).value();
  const cplx big = l * l;
  const cplx big0 = l0 * l0;
  const double a = std::norm(l0);
  const double num = std::norm(big + big0);
  const double den = 2 * std::norm(big + a);
  return num / den * outer_modulus(weight, u, domain, opts);
}

PredictionReport predict_residual_profile(const ArcDomain& domain, const WeightSpec& weight, ComplexPoint u0,
                                          std::span<const ComplexPoint> points, const QuadratureOptions& opts) {
  PredictionReport rep;
  rep.kind = PredictionKind::residual_modulus_profile;
  for (const ComplexPoint& u : points)
    rep.profile.emplace_back(u, limit_residual_modulus(domain, weight, u, u0, opts));
  rep.value = rep.profile.empty() ? 0.0 : rep.profile.front().second;
  rep.components = {{"kernel", kernel_k(u0, u0, domain).real()},
                    {"log_integral", harmonic_measure_log_integral(weight, u0, domain, opts)}};
  return rep;
}

std::pair<double, double> szego_widom_bounds(const ArcDomain& domain, const WeightSpec& weight,
                                             const QuadratureOptions& opts) {
  const double s = std::exp(mu_log_integral(weight, domain, opts));
  return {s, 2 * s};
}

Extrapolation richardson_extrapolate(std::span<const std::pair<int, double>> values) {
  if (values.size() < 3) throw Error(ErrorCode::invalid_argument, "extrapolation needs at least three entries");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].first <= 0) throw Error(ErrorCode::invalid_argument, "n must be positive");
    if (i > 0 && values[i].first <= values[i - 1].first)
      throw Error(ErrorCode::invalid_argument, "n must be strictly increasing");
  }
  const auto rows = static_cast<Eigen::Index>(values.size());
  const Eigen::Index cols = rows >= 5 ? 3 : 2;
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double inv = 1.0 / values[static_cast<std::size_t>(i)].first;
    a(i, 0) = 1.0;
    a(i, 1) = inv;
    if (cols == 3) a(i, 2) = inv * inv;
    b(i) = values[static_cast<std::size_t>(i)].second;
  }
  const Eigen::VectorXd scale = a.colwise().norm().transpose();
  const Eigen::MatrixXd scaled = a * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 0.0) || sv(0) / sv(sv.size() - 1) > 1e8)
    throw Error(ErrorCode::ill_conditioned_fit, "n range too narrow for the extrapolation model");
  const Eigen::VectorXd coef = scale.cwiseInverse().asDiagonal() * svd.solve(b);

  Extrapolation out;
  out.limit = coef(0);
  out.coefficients.assign(coef.data(), coef.data() + coef.size());
  out.residual = (a * coef - b).cwiseAbs().maxCoeff() / std::max(1.0, std::abs(out.limit));
  return out;
}

}  // namespace widom
