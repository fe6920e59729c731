#include "widom/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "widom/error.hpp"

namespace widom {

namespace {

constexpr double kDedup = 1e-10;
constexpr int kGradingLevels = 16;

void check_size(std::size_t size, int intended_degree, Grid& g) {
  if (size < 2 || size < static_cast<std::size_t>(intended_degree) + 2)
    throw Error(ErrorCode::size_too_small, "grid size below degree + 2");
  g.undersized = size < static_cast<std::size_t>(8 * intended_degree + 16);
}

void dedup_sorted(std::vector<double>& v) {
  std::vector<double> out;
  for (double t : v)
    if (out.empty() || t - out.back() > kDedup) out.push_back(t);
  v.swap(out);
}

}  // namespace

const char* to_string(GridStrategy s) {
  switch (s) {
    case GridStrategy::chebyshev_theta: return "chebyshev_theta";
    case GridStrategy::uniform_theta: return "uniform_theta";
    case GridStrategy::hybrid: return "hybrid";
  }
  return "chebyshev_theta";
}

GridStrategy grid_strategy_from_string(const std::string& s) {
  if (s == "chebyshev_theta" || s == "chebyshev") return GridStrategy::chebyshev_theta;
  if (s == "uniform_theta" || s == "uniform") return GridStrategy::uniform_theta;
  if (s == "hybrid") return GridStrategy::hybrid;
  throw Error(ErrorCode::invalid_argument, "unknown grid strategy '" + s + "'");
}

std::size_t default_grid_size(int degree) {
  return static_cast<std::size_t>(std::max(16 * degree + 64, 1024));
}

std::vector<double> grid_angles(double alpha, std::size_t size, GridStrategy strategy) {
  if (size < 2) return {0.0};
  const double last = static_cast<double>(size - 1);
  std::vector<double> t;
  // Lower half computed, upper half mirrored so the grid is exactly conjugation-symmetric.
  auto emit = [&](auto&& angle) {
    for (std::size_t j = 0; 2 * j < size - 1; ++j) {
      const double v = angle(static_cast<double>(j));
      t.push_back(v);
      t.push_back(-v);
    }
    if (size % 2 == 1) t.push_back(0.0);
  };
  auto cheb = [&](double j) { return -alpha * std::cos(kPi * j / last); };
  auto uniform = [&](double j) { return -alpha + 2.0 * alpha * j / last; };
  if (strategy != GridStrategy::uniform_theta) emit(cheb);
  if (strategy != GridStrategy::chebyshev_theta) emit(uniform);
  std::sort(t.begin(), t.end());
  dedup_sorted(t);
  return t;
}

Grid build_grid(const ArcDomain& domain, std::size_t size, GridStrategy strategy, const WeightSpec& weight,
                int intended_degree) {
  weight.validate(domain);
  Grid g;
  g.strategy = strategy;
  check_size(size, intended_degree, g);
  std::vector<double> theta = grid_angles(domain.alpha(), size, strategy);

  for (std::size_t idx : weight.singular_on_arc(domain)) {
    const double t0 = std::arg(domain.nearest_point(weight.powers[idx].node));
    std::erase_if(theta, [&](double t) { return std::abs(t - t0) < kDedup; });
    double h = 2.0 * domain.alpha();
    for (double t : theta) h = std::min(h, std::abs(t - t0));
    for (int k = 1; k <= kGradingLevels; ++k) {
      const double d = h * std::ldexp(1.0, -k);
      if (t0 - d >= -domain.alpha()) theta.push_back(t0 - d);
      if (t0 + d <= domain.alpha()) theta.push_back(t0 + d);
    }
    std::sort(theta.begin(), theta.end());
    dedup_sorted(theta);
  }

  for (double t : theta) {
    g.params.push_back(t);
    g.points.push_back(std::polar(1.0, t));
    g.branch.push_back(0);
    g.weight_values.push_back(eval_weight(weight, ComplexPoint(g.points.back()), domain));
  }
  if (std::none_of(g.weight_values.begin(), g.weight_values.end(), [](double w) { return w > 0.0; }))
    throw Error(ErrorCode::invalid_argument, "weight vanishes on the whole grid");
  return g;
}

Grid build_grid(const LemniscateSpec& spec, std::size_t size, GridStrategy strategy, int intended_degree) {
  spec.validate();
  Grid g;
  g.strategy = strategy;
  check_size(size, intended_degree, g);
  bool have_origin = false;
  for (double t : grid_angles(spec.alpha, size, strategy)) {
    const cplx v = spec.r * std::polar(1.0, t) - 1.0;
    const double rho = std::pow(std::abs(v), 1.0 / spec.m);
    if (rho < kDedup) {
      if (!have_origin) {
        g.points.push_back(0.0);
        g.params.push_back(t);
        g.branch.push_back(0);
        have_origin = true;
      }
      continue;
    }
    const double phase = std::arg(v);
    for (int k = 0; k < spec.m; ++k) {
      g.points.push_back(std::polar(rho, (phase + 2.0 * kPi * k) / spec.m));
      g.params.push_back(t);
      g.branch.push_back(k);
    }
  }
  g.weight_values.assign(g.points.size(), 1.0);
  return g;
}

}  // namespace widom
