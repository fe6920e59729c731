#include "widom/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "widom/error.hpp"

namespace widom {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Pivots between recomputations of the tableau from the original data.
constexpr int kReinvertEvery = 40;

class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : m_(a.rows()), n_(a.cols()), orig_(a.rows(), a.cols() + a.rows() + 1),
        t_(RowMatrix::Zero(a.rows() + 1, a.cols() + a.rows() + 1)), basis_(static_cast<std::size_t>(a.rows())) {
    orig_.setZero();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double sign = b(i) < 0.0 ? -1.0 : 1.0;
      orig_.row(i).head(n_) = sign * a.row(i);
      orig_(i, n_ + i) = 1.0;
      orig_(i, rhs()) = sign * b(i);
      basis_[static_cast<std::size_t>(i)] = n_ + i;
    }
    t_.topRows(m_) = orig_;
    scale_ = std::max(1.0, a.cwiseAbs().maxCoeff());
    crash_basis();
  }

  Eigen::Index rhs() const { return n_ + m_; }

  // Phase one: minimize the sum of artificials still in the basis.
  void phase_one() {
    cost_ = Eigen::VectorXd::Zero(n_ + m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index bi = basis_[static_cast<std::size_t>(i)];
      if (bi >= n_) cost_(bi) = 1.0;
    }
    reinvert();
    iterate(n_ + m_);
    if (-t_(m_, rhs()) > 1e-9 * scale_ * std::max(1.0, t_.col(rhs()).head(m_).cwiseAbs().maxCoeff()))
      throw Error(ErrorCode::lp_failure, "linear program is infeasible");
    // Drive remaining artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > 1e-9 * scale_) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  void phase_two(const Eigen::VectorXd& c) {
    cost_ = Eigen::VectorXd::Zero(n_ + m_);
    cost_.head(n_) = c;
    reinvert();
    iterate(n_);
  }

  double objective() const { return -t_(m_, rhs()); }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index bi = basis_[static_cast<std::size_t>(i)];
      if (bi < n_) x(bi) = std::max(0.0, t_(i, rhs()));
    }
    return x;
  }

  int pivots() const { return pivots_; }

 private:
  // Columns with a single positive entry serve as the initial basis of their row.
  void crash_basis() {
    std::vector<bool> covered(static_cast<std::size_t>(m_), false);
    for (Eigen::Index j = 0; j < n_; ++j) {
      Eigen::Index row = -1;
      int nonzeros = 0;
      for (Eigen::Index i = 0; i < m_ && nonzeros < 2; ++i) {
        if (orig_(i, j) != 0.0) {
          ++nonzeros;
          row = i;
        }
      }
      if (nonzeros != 1 || !(orig_(row, j) > 0.0) || covered[static_cast<std::size_t>(row)]) continue;
      covered[static_cast<std::size_t>(row)] = true;
      basis_[static_cast<std::size_t>(row)] = j;
    }
  }

  // Rebuilds B^{-1} [A | I | b] and the reduced costs of cost_ from the original data.
  void reinvert() {
    Eigen::MatrixXd bmat(m_, m_);
    Eigen::VectorXd cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index bi = basis_[static_cast<std::size_t>(i)];
      bmat.col(i) = orig_.col(bi);
      cb(i) = cost_.size() ? cost_(bi) : 0.0;
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
    t_.topRows(m_) = lu.solve(Eigen::MatrixXd(orig_));
    for (Eigen::Index i = 0; i < m_; ++i) {
      // basic columns are exact unit vectors; tiny negative right-hand sides are round-off
      const Eigen::Index bi = basis_[static_cast<std::size_t>(i)];
      t_.col(bi).head(m_).setZero();
      t_(i, bi) = 1.0;
      if (t_(i, rhs()) < 0.0 && t_(i, rhs()) > -1e-12 * scale_) t_(i, rhs()) = 0.0;
    }
    t_.row(m_).setZero();
    if (cost_.size()) t_.row(m_).head(n_ + m_) = cost_.transpose();
    t_.row(m_) -= cb.transpose() * t_.topRows(m_);
    for (Eigen::Index i = 0; i < m_; ++i) t_(m_, basis_[static_cast<std::size_t>(i)]) = 0.0;
    since_reinvert_ = 0;
  }

  // Columns >= limit never enter the basis.
  void iterate(Eigen::Index limit) {
    const double tol = 1e-11 * scale_;
    const long max_pivots = 50L * (m_ + n_) + 1000;
    int degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (pivots_ > max_pivots) throw Error(ErrorCode::lp_failure, "simplex iteration limit reached");
      if (since_reinvert_ >= kReinvertEvery) reinvert();
      // Bland's rule stays on once a long degenerate run is seen.
      bland = bland || degenerate_run > 50;
      Eigen::Index enter = -1;
      double best = -tol;
      for (Eigen::Index j = 0; j < limit; ++j) {
        const double d = t_(m_, j);
        if (d < best) {
          enter = j;
          if (bland) break;
          best = d;
        }
      }
      if (enter < 0) {
        // confirm optimality on a freshly computed tableau
        if (since_reinvert_ == 0) return;
        reinvert();
        continue;
      }
      const double col_max = t_.col(enter).head(m_).cwiseAbs().maxCoeff();
      const double piv_tol = std::max(tol, 1e-9 * col_max);
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        const double piv = t_(i, enter);
        if (piv <= piv_tol) continue;
        const double q = std::max(0.0, t_(i, rhs())) / piv;
        if (q < ratio - 1e-14 ||
            (q <= ratio + 1e-14 && leave >= 0 &&
             (bland ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]
                    : piv > t_(leave, enter)))) {
          ratio = q;
          leave = i;
        }
      }
      if (leave < 0) throw Error(ErrorCode::lp_failure, "linear program is unbounded");
      degenerate_run = ratio <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
    ++pivots_;
    ++since_reinvert_;
  }

  Eigen::Index m_;
  Eigen::Index n_;
  RowMatrix orig_;
  RowMatrix t_;
  std::vector<Eigen::Index> basis_;
  Eigen::VectorXd cost_;
  double scale_ = 1.0;
  int pivots_ = 0;
  int since_reinvert_ = 0;
};

}  // namespace

LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  if (a.rows() != b.size() || a.cols() != c.size())
    throw Error(ErrorCode::invalid_argument, "LP dimension mismatch");
  Tableau tab(a, b);
  tab.phase_one();
  tab.phase_two(c);
  return {tab.objective(), tab.solution(), tab.pivots()};
}

}  // namespace widom
