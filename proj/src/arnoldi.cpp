#include "widom/arnoldi.hpp"

#include <cmath>
#include <numeric>

#include "widom/error.hpp"

namespace widom {

ArnoldiBasis::ArnoldiBasis(std::span<const cplx> points, std::span<const double> measure, int degree)
    : degree_(degree) {
  const auto n_pts = static_cast<Eigen::Index>(points.size());
  if (degree < 0) throw Error(ErrorCode::invalid_argument, "negative degree");
  if (measure.size() != points.size()) throw Error(ErrorCode::invalid_argument, "measure size mismatch");
  Eigen::VectorXd mu(n_pts);
  for (Eigen::Index j = 0; j < n_pts; ++j) mu(j) = measure[j];
  const double mass = mu.sum();
  if (!(mass > 0.0)) throw Error(ErrorCode::invalid_argument, "inner product measure has no mass");
  mu /= mass;

  Eigen::VectorXcd x(n_pts);
  for (Eigen::Index j = 0; j < n_pts; ++j) x(j) = points[j];

  q0_ = 1.0;
  q_ = Eigen::MatrixXcd::Zero(n_pts, degree + 1);
  h_ = Eigen::MatrixXcd::Zero(degree + 1, std::max(degree, 0));
  q_.col(0).setConstant(q0_);
  for (int k = 0; k < degree; ++k) {
    Eigen::VectorXcd v = x.cwiseProduct(q_.col(k));
    // Classical Gram-Schmidt, done twice.
    for (int pass = 0; pass < 2; ++pass) {
      const auto basis = q_.leftCols(k + 1);
      Eigen::VectorXcd coeff = basis.adjoint() * mu.asDiagonal() * v;
      v -= basis * coeff;
      h_.col(k).head(k + 1) += coeff;
    }
    const double nrm = std::sqrt((mu.array() * v.array().abs2()).sum());
    if (!(nrm > 0.0) || !std::isfinite(nrm))
      throw Error(ErrorCode::invalid_argument, "Arnoldi breakdown: too few distinct weighted points");
    h_(k + 1, k) = nrm;
    q_.col(k + 1) = v / nrm;
  }
}

Eigen::VectorXcd ArnoldiBasis::evaluate(cplx z) const {
  Eigen::VectorXcd v(degree_ + 1);
  v(0) = q0_;
  for (int k = 0; k < degree_; ++k) {
    cplx acc = z * v(k);
    for (int i = 0; i <= k; ++i) acc -= h_(i, k) * v(i);
    v(k + 1) = acc / h_(k + 1, k);
  }
  return v;
}

Eigen::MatrixXcd ArnoldiBasis::evaluate(std::span<const cplx> z) const {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(z.size()), degree_ + 1);
  for (std::size_t j = 0; j < z.size(); ++j) out.row(static_cast<Eigen::Index>(j)) = evaluate(z[j]).transpose();
  return out;
}

Eigen::VectorXd ArnoldiBasis::leading_coefficients() const {
  Eigen::VectorXd lead(degree_ + 1);
  lead(0) = q0_;
  for (int k = 0; k < degree_; ++k) lead(k + 1) = lead(k) / h_(k + 1, k).real();
  return lead;
}

Eigen::VectorXcd ArnoldiBasis::evaluate(const ComplexPoint& u0) const {
  if (u0.is_infinite()) return leading_coefficients().cast<cplx>();
  return evaluate(u0.value());
}

Eigen::MatrixXcd ArnoldiBasis::monomial_coefficients() const {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(degree_ + 1, degree_ + 1);
  c(0, 0) = q0_;
  for (int k = 0; k < degree_; ++k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(degree_ + 1);
    v.segment(1, k + 1) = c.col(k).head(k + 1);
    for (int i = 0; i <= k; ++i) v -= h_(i, k) * c.col(i);
    c.col(k + 1) = v / h_(k + 1, k);
  }
  return c;
}

}  // namespace widom
