#include "widom/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "widom/error.hpp"
#include "widom/simplex.hpp"

namespace widom {

namespace {

constexpr double kDegenerateDistance = 1e-12;
constexpr double kCertificatePerturbation = 1e-8;

// P = (q_pivot + sum_k c_k (q_k - rho_k q_pivot)) / pivot_value over the free indices k.
// Residuals w_j P(x_j) are tracked in the scaled form r = offset + dirs * c.
struct AffineForm {
  Eigen::VectorXcd offset;
  Eigen::MatrixXcd dirs;
  std::vector<int> free;
  int pivot = 0;
  Eigen::VectorXcd rho;
  cplx pivot_value{1.0, 0.0};

  Eigen::Index size() const { return dirs.cols(); }

  Eigen::VectorXcd residual(const Eigen::VectorXcd& c) const {
    if (size() == 0) return offset;
    return offset + dirs * c;
  }

  Eigen::VectorXcd basis_coefficients(const Eigen::VectorXcd& c, int degree) const {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(degree + 1);
    a(pivot) = 1.0;
    for (std::size_t i = 0; i < free.size(); ++i) {
      const auto idx = static_cast<Eigen::Index>(i);
      a(free[i]) = c(idx);
      a(pivot) -= c(idx) * rho(free[i]);
    }
    return a / pivot_value;
  }

  Eigen::VectorXcd free_coefficients(const Eigen::VectorXcd& a) const {
    Eigen::VectorXcd c(size());
    for (std::size_t i = 0; i < free.size(); ++i) c(static_cast<Eigen::Index>(i)) = a(free[i]) * pivot_value;
    return c;
  }
};

Eigen::VectorXd weights_of(const Grid& grid) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t j = 0; j < grid.size(); ++j) w(static_cast<Eigen::Index>(j)) = grid.weight_values[j];
  return w;
}

AffineForm make_affine(const Eigen::MatrixXcd& q, const Eigen::VectorXd& w, const ArnoldiBasis& basis,
                       const Normalization& nz) {
  const int n = basis.degree();
  AffineForm f;
  const Eigen::VectorXcd target = basis.evaluate(nz.target());
  if (nz.is_monic()) {
    f.pivot = n;
    f.rho = Eigen::VectorXcd::Zero(n + 1);
    f.rho(n) = 1.0;
  } else {
    Eigen::Index arg = 0;
    target.cwiseAbs().maxCoeff(&arg);
    f.pivot = static_cast<int>(arg);
    f.rho = target / target(arg);
  }
  f.pivot_value = target(f.pivot);
  if (!(std::abs(f.pivot_value) > 0.0) || !std::isfinite(std::abs(f.pivot_value)))
    throw Error(ErrorCode::degenerate_normalization, "normalization functional vanishes on the basis");
  f.offset = w.cast<cplx>().cwiseProduct(q.col(f.pivot));
  f.dirs.resize(q.rows(), n);
  Eigen::Index col = 0;
  for (int k = 0; k <= n; ++k) {
    if (k == f.pivot) continue;
    f.free.push_back(k);
    f.dirs.col(col++) = w.cast<cplx>().cwiseProduct(q.col(k) - f.rho(k) * q.col(f.pivot));
  }
  return f;
}

std::vector<Eigen::Index> active_rows(const Eigen::VectorXd& w) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index j = 0; j < w.size(); ++j)
    if (w(j) > 0.0) rows.push_back(j);
  return rows;
}

struct LawsonResult {
  Eigen::VectorXcd c;
  double norm = std::numeric_limits<double>::infinity();
  double lower = 0.0;
  Eigen::VectorXd omega;
  int iterations = 0;
  bool converged = false;
};

LawsonResult lawson(const AffineForm& f, const std::vector<Eigen::Index>& active, const SolverOptions& opts) {
  const Eigen::Index rows = f.offset.size();
  const Eigen::Index p = f.size();
  LawsonResult best;
  best.c = Eigen::VectorXcd::Zero(p);
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(rows);
  for (auto j : active) omega(j) = 1.0 / static_cast<double>(active.size());

  double gamma = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opts.max_iterations; ++it) {
    best.iterations = it;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(p);
    if (p > 0) {
      const Eigen::VectorXd sq = omega.cwiseSqrt();
      const Eigen::MatrixXcd m = sq.cast<cplx>().asDiagonal() * f.dirs;
      const Eigen::VectorXcd rhs = -(sq.cast<cplx>().cwiseProduct(f.offset));
      c = m.householderQr().solve(rhs);
    }
    const Eigen::VectorXcd r = f.residual(c);
    const Eigen::VectorXd mod = r.cwiseAbs();
    const double norm = mod.maxCoeff();
    const double lower = std::sqrt((omega.array() * mod.array().square()).sum());
    if (norm < best.norm) {
      best.norm = norm;
      best.c = c;
    }
    best.omega = omega;
    best.lower = std::max(best.lower, lower);
    const double gap = (best.norm - best.lower) / best.norm;
    if (gap < 1e-12 || (!opts.polish && std::abs(norm - prev) < opts.norm_change_tol * norm)) {
      best.converged = true;
      break;
    }
    if (opts.polish && gap < opts.handoff_gap) break;
    if (norm > prev) gamma = std::max(0.5 * gamma, 1.0 / 64.0);
    prev = norm;

    double total = 0.0;
    for (auto j : active) {
      omega(j) *= std::pow(mod(j) / norm, gamma);
      total += omega(j);
    }
    if (!(total > 0.0)) break;
    omega /= total;
  }
  return best;
}

// Primal-dual interior-point method for  min t  s.t.  |r_j(c)| - t <= 0, started from the Lawson
// iterate with the Lawson multipliers as dual estimate.
Eigen::VectorXcd interior_point_polish(const AffineForm& f, const std::vector<Eigen::Index>& active,
                                       const Eigen::VectorXcd& c0, const Eigen::VectorXd& omega0, int& steps) {
  const Eigen::Index p = f.size();
  const Eigen::Index m = static_cast<Eigen::Index>(active.size());
  const Eigen::Index nv = 2 * p;
  const double s0 = f.residual(c0).cwiseAbs().maxCoeff();
  if (p == 0 || !(s0 > 0.0)) return c0;

  Eigen::MatrixXd ar(m, nv), ai(m, nv);
  Eigen::VectorXd orr(m), oi(m);
  Eigen::VectorXd lambda(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = active[static_cast<std::size_t>(i)];
    orr(i) = f.offset(j).real() / s0;
    oi(i) = f.offset(j).imag() / s0;
    lambda(i) = omega0(j);
    for (Eigen::Index k = 0; k < p; ++k) {
      const cplx d = f.dirs(j, k) / s0;
      ar(i, 2 * k) = d.real();
      ar(i, 2 * k + 1) = -d.imag();
      ai(i, 2 * k) = d.imag();
      ai(i, 2 * k + 1) = d.real();
    }
  }
  lambda = (lambda.array() + 1e-3 / static_cast<double>(m)).matrix();
  lambda /= lambda.sum();

  Eigen::VectorXd z(nv + 1);
  for (Eigen::Index k = 0; k < p; ++k) {
    z(2 * k) = c0(k).real();
    z(2 * k + 1) = c0(k).imag();
  }
  z(nv) = 1.0 + 1e-3;

  struct State {
    Eigen::VectorXd rre, rim, mod, fval;
  };
  auto evaluate = [&](const Eigen::VectorXd& zz) {
    State st;
    st.rre = orr + ar * zz.head(nv);
    st.rim = oi + ai * zz.head(nv);
    st.mod = (st.rre.array().square() + st.rim.array().square()).sqrt().max(1e-300).matrix();
    st.fval = (st.mod.array() - zz(nv)).matrix();
    return st;
  };
  // Constraint gradients with respect to y; the t-component is -1 for every row.
  auto gradients = [&](const State& st) {
    const Eigen::ArrayXd ure = st.rre.array() / st.mod.array();
    const Eigen::ArrayXd uim = st.rim.array() / st.mod.array();
    return Eigen::MatrixXd((ar.array().colwise() * ure + ai.array().colwise() * uim).matrix());
  };
  auto residual_norm = [&](const State& st, const Eigen::MatrixXd& g, const Eigen::VectorXd& lam, double tau) {
    Eigen::VectorXd rd(nv + 1);
    rd.head(nv) = g.transpose() * lam;
    rd(nv) = 1.0 - lam.sum();
    const Eigen::VectorXd rc = (-(lam.array() * st.fval.array()) - 1.0 / tau).matrix();
    return std::sqrt(rd.squaredNorm() + rc.squaredNorm());
  };

  double mu_factor = 10.0;
  Eigen::VectorXd best_z = z;
  double best_t = s0 > 0 ? 1.0 : 0.0;
  State st = evaluate(z);
  for (int it = 0; it < 200; ++it) {
    ++steps;
    const Eigen::MatrixXd g = gradients(st);
    const double eta = -st.fval.dot(lambda);
    const double tau = mu_factor * static_cast<double>(m) / eta;
    Eigen::VectorXd rdual(nv + 1);
    rdual.head(nv) = g.transpose() * lambda;
    rdual(nv) = 1.0 - lambda.sum();
    const double current = st.mod.maxCoeff();
    if (current < best_t) {
      best_t = current;
      best_z = z;
    }
    if (eta < 1e-14 && rdual.norm() < 1e-12) break;

    const Eigen::ArrayXd inv_f = (-st.fval.array()).inverse();
    const Eigen::ArrayXd curv = lambda.array() / st.mod.array();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nv + 1, nv + 1);
    auto hyy = h.topLeftCorner(nv, nv);
    hyy.noalias() += ar.transpose() * curv.matrix().asDiagonal() * ar;
    hyy.noalias() += ai.transpose() * curv.matrix().asDiagonal() * ai;
    hyy.noalias() -= g.transpose() * curv.matrix().asDiagonal() * g;
    const Eigen::ArrayXd dw = lambda.array() * inv_f;
    hyy.noalias() += g.transpose() * dw.matrix().asDiagonal() * g;
    const Eigen::VectorXd hyt = -(g.transpose() * dw.matrix());
    h.topRightCorner(nv, 1) = hyt;
    h.bottomLeftCorner(1, nv) = hyt.transpose();
    h(nv, nv) = dw.sum();

    Eigen::VectorXd rhs(nv + 1);
    rhs.head(nv) = -(g.transpose() * inv_f.matrix()) / tau;
    rhs(nv) = -1.0 + inv_f.sum() / tau;
    const Eigen::VectorXd dz = h.ldlt().solve(rhs);
    if (!dz.allFinite()) break;

    // Delta lambda_i = (r_cent_i - lambda_i grad_i . dz) / f_i
    const Eigen::ArrayXd gdz = (g * dz.head(nv)).array() - dz(nv);
    const Eigen::ArrayXd rcent = -(lambda.array() * st.fval.array()) - 1.0 / tau;
    const Eigen::VectorXd dl = ((rcent - lambda.array() * gdz) / st.fval.array()).matrix();

    double smax = 1.0;
    for (Eigen::Index i = 0; i < m; ++i)
      if (dl(i) < 0.0) smax = std::min(smax, -lambda(i) / dl(i));
    double step = 0.99 * smax;
    const double r0 = residual_norm(st, g, lambda, tau);
    State trial;
    bool accepted = false;
    for (int back = 0; back < 60; ++back) {
      const Eigen::VectorXd zt = z + step * dz;
      trial = evaluate(zt);
      if ((trial.fval.array() < 0.0).all()) {
        const Eigen::VectorXd lt = lambda + step * dl;
        if (residual_norm(trial, gradients(trial), lt, tau) <= (1.0 - 0.01 * step) * r0) {
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;
    mu_factor = step > 0.5 ? 10.0 : (step > 0.1 ? 3.0 : 1.2);
    z += step * dz;
    lambda += step * dl;
    st = std::move(trial);
  }
  if (st.mod.maxCoeff() < best_t) best_z = z;

  Eigen::VectorXcd c(p);
  for (Eigen::Index k = 0; k < p; ++k) c(k) = cplx(best_z(2 * k), best_z(2 * k + 1));
  return c;
}

std::vector<std::size_t> extremal_indices(const Eigen::VectorXd& mod, double norm, double delta) {
  std::vector<std::size_t> out;
  for (Eigen::Index j = 0; j < mod.size(); ++j)
    if (mod(j) >= (1.0 - delta) * norm) out.push_back(static_cast<std::size_t>(j));
  return out;
}

double certificate_lp(const AffineForm& f, const Eigen::VectorXcd& c, const std::vector<std::size_t>& ext) {
  const Eigen::Index p = f.size();
  if (p == 0) return 0.0;
  if (ext.empty()) throw Error(ErrorCode::empty_extremal_set, "no extremal points");
  const Eigen::VectorXcd r = f.residual(c);
  const double norm = r.cwiseAbs().maxCoeff();
  const Eigen::Index nv = 2 * p;
  const Eigen::Index ns = static_cast<Eigen::Index>(ext.size());
  // Variables: s, y+ (nv), y- (nv), slack per extremal row (ns), slack per box row (nv).
  const Eigen::Index cols = 1 + 2 * nv + ns + nv;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ns + nv, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(ns + nv);
  for (Eigen::Index i = 0; i < ns; ++i) {
    const auto j = static_cast<Eigen::Index>(ext[static_cast<std::size_t>(i)]);
    const cplx unit = std::abs(r(j)) > 0.0 ? r(j) / std::abs(r(j)) : cplx(1.0, 0.0);
    a(i, 0) = 1.0;
    for (Eigen::Index k = 0; k < p; ++k) {
      const cplx z = std::conj(unit) * f.dirs(j, k) / norm;
      // decrease rate along y: -Re[conj(u) d c]
      const double g_re = -z.real();
      const double g_im = z.imag();
      a(i, 1 + 2 * k) = -g_re;
      a(i, 1 + 2 * k + 1) = -g_im;
      a(i, 1 + nv + 2 * k) = g_re;
      a(i, 1 + nv + 2 * k + 1) = g_im;
    }
    a(i, 1 + 2 * nv + i) = 1.0;
    // Distinct tiny right-hand sides break the degeneracy at y = 0; they can raise the optimum
    // by at most kCertificatePerturbation.
    b(i) = kCertificatePerturbation * (1.0 + static_cast<double>(i) / static_cast<double>(ns));
  }
  for (Eigen::Index k = 0; k < nv; ++k) {
    a(ns + k, 1 + k) = 1.0;
    a(ns + k, 1 + nv + k) = 1.0;
    a(ns + k, 1 + 2 * nv + ns + k) = 1.0;
    b(ns + k) = 1.0;
  }
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(cols);
  cost(0) = -1.0;
  return std::max(0.0, -solve_standard_lp(a, b, cost).objective - 2.0 * kCertificatePerturbation);
}

void check_normalization_point(const Grid& grid, const Normalization& nz) {
  if (nz.is_monic()) return;
  const cplx u0 = nz.target().value();
  for (const cplx& x : grid.points)
    if (std::abs(x - u0) < kDegenerateDistance)
      throw Error(ErrorCode::degenerate_normalization, "normalization point lies on the grid");
}

ArnoldiBasis make_basis(const Grid& grid, int degree) {
  std::vector<double> measure(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) measure[j] = grid.weight_values[j] * grid.weight_values[j];
  return ArnoldiBasis(grid.points, measure, degree);
}

}  // namespace

cplx PolySolution::operator()(cplx z) const { return basis.evaluate(z).cwiseProduct(coefficients).sum(); }

cplx PolySolution::leading_coefficient() const {
  return coefficients(degree) * basis.leading_coefficients()(degree);
}

Eigen::VectorXcd PolySolution::monomial_coefficients() const { return basis.monomial_coefficients() * coefficients; }

PolySolution solve_minimax(const Grid& grid, int degree, Normalization normalization, const SolverOptions& opts) {
  if (degree < 0) throw Error(ErrorCode::invalid_argument, "negative degree");
  if (grid.size() < static_cast<std::size_t>(degree) + 2)
    throw Error(ErrorCode::size_too_small, "grid size below degree + 2");
  check_normalization_point(grid, normalization);

  PolySolution sol;
  sol.degree = degree;
  sol.normalization = normalization;
  sol.basis = make_basis(grid, degree);
  const Eigen::VectorXd w = weights_of(grid);
  const AffineForm f = make_affine(sol.basis.values(), w, sol.basis, normalization);
  const auto active = active_rows(w);

  LawsonResult lw = lawson(f, active, opts);
  Eigen::VectorXcd c = lw.c;
  double scaled_norm = lw.norm;
  int steps = 0;
  if (opts.polish && !lw.converged && f.size() > 0) {
    const Eigen::VectorXcd polished = interior_point_polish(f, active, lw.c, lw.omega, steps);
    const double pn = f.residual(polished).cwiseAbs().maxCoeff();
    if (pn <= scaled_norm) {
      c = polished;
      scaled_norm = pn;
    }
  }
  sol.iterations = lw.iterations + steps;
  sol.coefficients = f.basis_coefficients(c, degree);

  const Eigen::VectorXd mod = f.residual(c).cwiseAbs();
  const double scale = std::abs(f.pivot_value);
  sol.norm = scaled_norm / scale;
  sol.lower_bound = std::min(lw.lower, scaled_norm) / scale;
  sol.extremal_set = extremal_indices(mod, scaled_norm, opts.extremal_delta);
  sol.certificate = certificate_lp(f, c, sol.extremal_set);
  sol.converged = sol.certificate <= opts.certificate_tol || (!opts.polish && lw.converged);
  return sol;
}

double optimality_certificate(const PolySolution& solution, const Grid& grid, double extremal_delta) {
  const Eigen::MatrixXcd q = solution.basis.evaluate(std::span<const cplx>(grid.points));
  const AffineForm f = make_affine(q, weights_of(grid), solution.basis, solution.normalization);
  const Eigen::VectorXcd c = f.free_coefficients(solution.coefficients);
  const Eigen::VectorXd mod = f.residual(c).cwiseAbs();
  const double norm = mod.maxCoeff();
  if (!(norm > 0.0)) throw Error(ErrorCode::empty_extremal_set, "zero residual");
  return certificate_lp(f, c, extremal_indices(mod, norm, extremal_delta));
}

PolySolution solution_from_monomials(const Grid& grid, const Eigen::VectorXcd& monomial, Normalization normalization,
                                     double extremal_delta) {
  const int degree = static_cast<int>(monomial.size()) - 1;
  if (degree < 0) throw Error(ErrorCode::invalid_argument, "empty coefficient vector");
  PolySolution sol;
  sol.degree = degree;
  sol.normalization = normalization;
  sol.basis = make_basis(grid, degree);
  const Eigen::MatrixXcd cm = sol.basis.monomial_coefficients();
  sol.coefficients = cm.triangularView<Eigen::Upper>().solve(monomial);
  const cplx at_target = normalization.is_monic() ? sol.leading_coefficient()
                                                  : sol(normalization.target().value());
  if (std::abs(at_target - 1.0) > 1e-8)
    throw Error(ErrorCode::wrong_normalization, "polynomial does not satisfy its normalization");
  const Eigen::VectorXd w = weights_of(grid);
  Eigen::VectorXd mod(static_cast<Eigen::Index>(grid.size()));
  const Eigen::VectorXcd vals = sol.basis.values() * sol.coefficients;
  for (Eigen::Index j = 0; j < mod.size(); ++j) mod(j) = w(j) * std::abs(vals(j));
  sol.norm = mod.maxCoeff();
  sol.extremal_set = extremal_indices(mod, sol.norm, extremal_delta);
  sol.certificate = optimality_certificate(sol, grid, extremal_delta);
  sol.converged = true;
  return sol;
}

OracleBracket brute_oracle_minimax(const Grid& grid, int degree, Normalization normalization, int polygon_sides) {
  if (degree < 0 || degree > 3) throw Error(ErrorCode::invalid_argument, "oracle supports degree <= 3");
  if (grid.size() > 256) throw Error(ErrorCode::invalid_argument, "oracle supports at most 256 grid points");
  if (polygon_sides < 3) throw Error(ErrorCode::invalid_argument, "polygon needs at least 3 sides");
  check_normalization_point(grid, normalization);

  // Monomial parametrization, independent of the Arnoldi machinery:
  //   monic:  P = x^n + sum_{k<n} c_k x^k
  //   point:  P = 1 + sum_{k=1..n} c_k (x^k - u0^k)
  const auto n_pts = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index p = degree;
  Eigen::VectorXcd fixed(n_pts);
  Eigen::MatrixXcd dirs(n_pts, p);
  for (Eigen::Index j = 0; j < n_pts; ++j) {
    const cplx x = grid.points[static_cast<std::size_t>(j)];
    const double wj = grid.weight_values[static_cast<std::size_t>(j)];
    if (normalization.is_monic()) {
      fixed(j) = wj * std::pow(x, degree);
      for (Eigen::Index k = 0; k < p; ++k) dirs(j, k) = wj * std::pow(x, static_cast<int>(k));
    } else {
      const cplx u0 = normalization.target().value();
      fixed(j) = wj;
      for (Eigen::Index k = 0; k < p; ++k) {
        const int e = static_cast<int>(k) + 1;
        dirs(j, k) = wj * (std::pow(x, e) - std::pow(u0, e));
      }
    }
  }
  // Dual LP:  max sum_i lambda_i h_i  s.t.  sum lambda = 1,  sum lambda_i g_i = 0,  lambda >= 0,
  // where constraint i reads  g_i . y + h_i <= t.
  const Eigen::Index rows = 1 + 2 * p;
  const Eigen::Index cols = n_pts * polygon_sides;
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd cost(cols);
  for (Eigen::Index j = 0; j < n_pts; ++j) {
    for (int k = 0; k < polygon_sides; ++k) {
      const cplx rot = std::polar(1.0, 2.0 * kPi * k / polygon_sides);
      const Eigen::Index col = j * polygon_sides + k;
      cost(col) = -(rot * fixed(j)).real();
      a(0, col) = 1.0;
      for (Eigen::Index q = 0; q < p; ++q) {
        const cplx z = rot * dirs(j, q);
        a(1 + 2 * q, col) = z.real();
        a(1 + 2 * q + 1, col) = -z.imag();
      }
    }
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  b(0) = 1.0;
  const double value = -solve_standard_lp(a, b, cost).objective;
  return {value, value / std::cos(kPi / polygon_sides)};
}

double widom_factor(const PolySolution& solution, double capacity) {
  if (!solution.normalization.is_monic())
    throw Error(ErrorCode::wrong_normalization, "Widom factors need a monic solution");
  if (!(capacity > 0.0)) throw Error(ErrorCode::invalid_argument, "capacity must be positive");
  return solution.norm / std::pow(capacity, solution.degree);
}

double residual_value(const PolySolution& solution, ComplexPoint u0) {
  const ComplexPoint& t = solution.normalization.target();
  const bool same = (t.is_infinite() && u0.is_infinite()) ||
                    (t.is_finite() && u0.is_finite() &&
                     std::abs(t.value() - u0.value()) <= 1e-14 * std::max(1.0, std::abs(u0.value())));
  if (!same) throw Error(ErrorCode::wrong_normalization, "solution is not normalized at u0");
  return 1.0 / solution.norm;
}

}  // namespace widom

