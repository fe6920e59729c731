#include "widom/lemniscate.hpp"

#include <cmath>
#include <future>

#include "widom/error.hpp"
#include "widom/potential.hpp"

namespace widom {

void LemniscateSpec::validate() const {
  if (m < 1) throw Error(ErrorCode::invalid_argument, "m must be at least 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::invalid_argument, "r must be positive");
  if (l < 0 || l >= m) throw Error(ErrorCode::invalid_argument, "l must satisfy 0 <= l < m");
  ArcDomain check(alpha);
  (void)check;
}

double LemniscateSpec::capacity() const { return std::pow(r * std::sin(alpha / 2), 1.0 / m); }

bool LemniscateSpec::connected() const { return std::abs(r - 1.0) <= 1e-12; }

double capacity_lemniscate(const LemniscateSpec& spec) {
  spec.validate();
  return spec.capacity();
}

ReducedProblem reduce(const LemniscateSpec& spec, int n) {
  spec.validate();
  if (n < 0) throw Error(ErrorCode::invalid_argument, "negative degree");
  return {n, lemniscate_reduced_weight(spec.m, spec.r, spec.l), std::pow(spec.r, n)};
}

LemniscatePolynomial::LemniscatePolynomial(PolySolution arc_solution, const LemniscateSpec& spec)
    : arc_(std::move(arc_solution)), spec_(spec) {
  spec_.validate();
  if (!arc_.normalization.is_monic())
    throw Error(ErrorCode::wrong_normalization, "reconstruction needs a monic arc solution");
}

cplx LemniscatePolynomial::operator()(cplx z) const {
  const cplx zeta = (std::pow(z, spec_.m) + 1.0) / spec_.r;
  return std::pow(z, spec_.l) * std::pow(spec_.r, arc_.degree) * arc_(zeta);
}

LemniscatePolynomial reconstruct_poly(const PolySolution& arc_solution, const LemniscateSpec& spec, int n) {
  if (arc_solution.degree != n) throw Error(ErrorCode::invalid_argument, "degree mismatch");
  return LemniscatePolynomial(arc_solution, spec);
}

ComparisonRecord direct_vs_reduced(const LemniscateSpec& spec, int n, std::size_t theta_nodes,
                                   GridStrategy strategy, const SolverOptions& opts) {
  const ReducedProblem red = reduce(spec, n);
  ComparisonRecord rec;
  rec.n = n;
  rec.direct_degree = n * spec.m + spec.l;
  if (rec.direct_degree > 60) throw Error(ErrorCode::invalid_argument, "direct degree above 60");
  rec.scale = red.scale;
  rec.near_singular = !spec.connected() && std::abs(spec.r - 1.0) < 1e-3;

  const ArcDomain arc = spec.arc();
  const Grid arc_grid = build_grid(arc, theta_nodes, strategy, red.weight, n);
  const Grid lem_grid = build_grid(spec, theta_nodes, strategy, rec.direct_degree);

  auto direct = std::async(std::launch::async, [&] {
    return solve_minimax(lem_grid, rec.direct_degree, Normalization::monic(), opts);
  });
  const PolySolution reduced = solve_minimax(arc_grid, n, Normalization::monic(), opts);
  const PolySolution dsol = direct.get();

  rec.direct_norm = dsol.norm;
  rec.reduced_norm = reduced.norm;
  rec.gap = std::abs(dsol.norm - red.scale * reduced.norm) / dsol.norm;
  const double cap = spec.capacity();
  rec.widom_direct = dsol.norm / std::pow(cap, rec.direct_degree);
  rec.widom_reduced = red.scale * reduced.norm / std::pow(cap, rec.direct_degree);
  const double a4 = std::cos(spec.alpha / 4);
  rec.widom_predicted = 2 * a4 * a4 * std::pow(c_r_alpha(spec.r, arc), static_cast<double>(spec.l) / spec.m);
  rec.direct_certificate = dsol.certificate;
  rec.reduced_certificate = reduced.certificate;
  rec.converged = dsol.converged && reduced.converged;
  return rec;
}

}  // namespace widom
