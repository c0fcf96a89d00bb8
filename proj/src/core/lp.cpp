#include "lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace polyprof {

namespace {

constexpr double kZeroNormTol = 1e-300;

// Row-normalized inequality system with artificial box rows appended.
// After normalization every residual b_i - a_i.x is a geometric distance,
// which makes one set of tolerances meaningful across callers.
struct Rows {
  Eigen::MatrixXd A;  // unit normals
  Eigen::VectorXd b;
  int n_original = 0;  // rows coming from the caller (after vacuous drops)
  bool infeasible_zero_row = false;
};

Rows normalize_and_augment(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           double tol, double art_bound) {
  const int m = static_cast<int>(A.rows());
  const int d = static_cast<int>(A.cols());
  Rows out;
  out.A.resize(m + 2 * d, d);
  out.b.resize(m + 2 * d);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    const double nrm = A.row(i).norm();
    if (nrm <= kZeroNormTol) {
      if (b(i) < -tol) out.infeasible_zero_row = true;
      continue;  // vacuous row
    }
    out.A.row(k) = A.row(i) / nrm;
    out.b(k) = b(i) / nrm;
    ++k;
  }
  out.n_original = k;
  for (int j = 0; j < d; ++j) {
    out.A.row(k).setZero();
    out.A(k, j) = 1.0;
    out.b(k) = art_bound;
    ++k;
    out.A.row(k).setZero();
    out.A(k, j) = -1.0;
    out.b(k) = art_bound;
    ++k;
  }
  out.A.conservativeResize(k, d);
  out.b.conservativeResize(k);
  return out;
}

class ActiveSetSolver {
 public:
  ActiveSetSolver(const Rows& rows, const Eigen::VectorXd& c,
                  const LpOptions& opts)
      : A_(rows.A), b_(rows.b), c_(c), opts_(opts),
        m_(static_cast<int>(rows.A.rows())),
        d_(static_cast<int>(rows.A.cols())),
        n_original_(rows.n_original),
        in_basis_(m_, 0) {}

  // x must be feasible on entry.
  LpStatus run(Eigen::VectorXd& x) {
    if (!purify(x)) return LpStatus::Unbounded;
    return iterate(x);
  }

  // true when the optimum is carried by an artificial bound, i.e. the real
  // problem improves beyond the artificial box
  bool artificial_supported() const {
    for (size_t k = 0; k < basis_.size(); ++k) {
      if (basis_[k] >= n_original_ &&
          lambda_(static_cast<int>(k)) > 1e-7 * (1.0 + c_.norm()))
        return true;
    }
    return false;
  }

 private:
  void basis_add(int row) {
    basis_.push_back(row);
    in_basis_[row] = 1;
  }

  void refactor() {
    Eigen::MatrixXd B(d_, d_);
    for (int k = 0; k < d_; ++k) B.row(k) = A_.row(basis_[k]);
    lu_.compute(B);
  }

  // Walk from an interior/face point to a vertex without decreasing c.x.
  bool purify(Eigen::VectorXd& x) {
    Eigen::MatrixXd Q(d_, d_);  // orthonormal basis of active normals
    int nq = 0;
    auto try_add = [&](int row) {
      Eigen::VectorXd r = A_.row(row).transpose();
      for (int k = 0; k < nq; ++k) r -= Q.col(k).dot(r) * Q.col(k);
      if (r.norm() <= 1e-8) return false;
      Q.col(nq++) = r / r.norm();
      basis_add(row);
      return true;
    };

    const Eigen::VectorXd res = b_ - A_ * x;
    for (int i = 0; i < m_ && nq < d_; ++i)
      if (res(i) <= opts_.tol) try_add(i);

    int guard = 0;
    while (nq < d_) {
      if (++guard > 4 * d_ + 16)
        raise(ErrorCode::NumericalFailure, "LP purification failed to converge");
      // direction orthogonal to the active normals, preferring the objective
      Eigen::VectorXd p = Eigen::VectorXd::Zero(d_);
      bool found = false;
      for (int cand = -1; cand < d_ && !found; ++cand) {
        Eigen::VectorXd v =
            (cand < 0) ? c_ : Eigen::VectorXd::Unit(d_, cand).eval();
        if (v.norm() <= kZeroNormTol) continue;
        for (int k = 0; k < nq; ++k) v -= Q.col(k).dot(v) * Q.col(k);
        if (v.norm() > 1e-10) {
          p = v / v.norm();
          found = true;
        }
      }
      if (!found)
        raise(ErrorCode::NumericalFailure, "LP purification: no free direction");
      if (c_.dot(p) < 0) p = -p;

      int block = ratio_test(x, p, false);
      if (block < 0) {
        if (c_.dot(p) > 1e-12 * (1.0 + c_.norm())) return false;  // unbounded
        p = -p;
        block = ratio_test(x, p, false);
        if (block < 0)
          raise(ErrorCode::NumericalFailure,
                "LP purification: free line despite bounds");
      }
      const double denom = A_.row(block).dot(p);
      const double t = std::max(0.0, (b_(block) - A_.row(block).dot(x)) / denom);
      x += t * p;
      try_add(block);
    }

    refactor();
    snap(x);
    return true;
  }

  // first blocking non-basis row along p; -1 if none
  int ratio_test(const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                 bool bland) const {
    double best = std::numeric_limits<double>::infinity();
    int row = -1;
    double row_denom = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (in_basis_[i]) continue;
      const double denom = A_.row(i).dot(p);
      if (denom <= 1e-11) continue;
      const double t = std::max(0.0, (b_(i) - A_.row(i).dot(x)) / denom);
      bool take = false;
      if (t < best - 1e-13) {
        take = true;
      } else if (t <= best + 1e-13 && row >= 0) {
        take = bland ? (i < row) : (denom > row_denom);
      }
      if (take) {
        best = t;
        row = i;
        row_denom = denom;
      }
    }
    return row;
  }

  void snap(Eigen::VectorXd& x) const {
    Eigen::VectorXd bb(d_);
    for (int k = 0; k < d_; ++k) bb(k) = b_(basis_[k]);
    const Eigen::VectorXd v = lu_.solve(bb);
    // only accept the algebraic vertex if it stays feasible
    if ((b_ - A_ * v).minCoeff() >= -64.0 * opts_.tol) x = v;
  }

  LpStatus iterate(Eigen::VectorXd& x) {
    int degen_streak = 0;
    for (int iter = 0; iter < opts_.max_iterations; ++iter) {
      lambda_ = lu_.transpose().solve(c_);
      const bool bland = degen_streak > 40;
      const double opt_tol = 1e-10 * (1.0 + c_.norm());

      int q = -1;
      if (bland) {
        int best_row = std::numeric_limits<int>::max();
        for (int k = 0; k < d_; ++k)
          if (lambda_(k) < -opt_tol && basis_[k] < best_row) {
            best_row = basis_[k];
            q = k;
          }
      } else {
        double most = -opt_tol;
        for (int k = 0; k < d_; ++k)
          if (lambda_(k) < most) {
            most = lambda_(k);
            q = k;
          }
      }
      if (q < 0) return LpStatus::Optimal;

      const Eigen::VectorXd p = lu_.solve(-Eigen::VectorXd::Unit(d_, q));

      const int row = ratio_test(x, p, bland);
      if (row < 0) return LpStatus::Unbounded;

      const double denom = A_.row(row).dot(p);
      const double step =
          std::max(0.0, (b_(row) - A_.row(row).dot(x)) / denom);
      if (step <= 1e-13)
        ++degen_streak;
      else
        degen_streak = 0;

      x += step * p;
      in_basis_[basis_[q]] = 0;
      basis_[q] = row;
      in_basis_[row] = 1;
      refactor();
      snap(x);
    }
    return LpStatus::IterationLimit;
  }

  const Eigen::MatrixXd& A_;
  const Eigen::VectorXd& b_;
  Eigen::VectorXd c_;
  LpOptions opts_;
  int m_, d_, n_original_;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
  Eigen::VectorXd lambda_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

}  // namespace

LpResult lp_maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c, const Eigen::VectorXd& x0,
                     const LpOptions& opts) {
  if (A.rows() != b.size() || A.cols() != c.size() || A.cols() != x0.size())
    raise(ErrorCode::DimMismatch, "lp_maximize: inconsistent dimensions");

  LpOptions o = opts;
  o.artificial_bound =
      std::max(o.artificial_bound, 4.0 * x0.lpNorm<Eigen::Infinity>() + 1.0);
  Rows rows = normalize_and_augment(A, b, o.tol, o.artificial_bound);
  if (rows.infeasible_zero_row)
    raise(ErrorCode::Infeasible, "lp_maximize: zero row with negative offset");

  if ((rows.b - rows.A * x0).minCoeff() < -64.0 * o.tol)
    raise(ErrorCode::InvalidArgument, "lp_maximize: start point infeasible");

  LpResult result;
  result.x = x0;
  ActiveSetSolver solver(rows, c, o);
  result.status = solver.run(result.x);
  if (result.status == LpStatus::IterationLimit)
    raise(ErrorCode::NumericalFailure, "lp_maximize: iteration limit");
  if (result.status == LpStatus::Optimal && solver.artificial_supported())
    result.status = LpStatus::Unbounded;
  result.objective = c.dot(result.x);
  return result;
}

ChebyshevResult chebyshev_ball(const Eigen::MatrixXd& A,
                               const Eigen::VectorXd& b,
                               const LpOptions& opts) {
  if (A.rows() != b.size())
    raise(ErrorCode::DimMismatch, "chebyshev_ball: inconsistent dimensions");
  const int m = static_cast<int>(A.rows());
  const int d = static_cast<int>(A.cols());

  ChebyshevResult out;
  out.center = Eigen::VectorXd::Zero(d);

  // lifted system in (x, r); pre-normalizing makes the r coefficient the
  // row's true norm weight (the re-scaling inside lp_maximize is harmless)
  Eigen::MatrixXd L(m, d + 1);
  Eigen::VectorXd lb(m);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    const double nrm = A.row(i).norm();
    if (nrm <= kZeroNormTol) {
      if (b(i) < -opts.tol) {
        out.radius = -std::numeric_limits<double>::infinity();
        return out;  // 0 <= b_i fails: empty system
      }
      continue;
    }
    L.row(k).head(d) = A.row(i) / nrm;
    L(k, d) = 1.0;
    lb(k) = b(i) / nrm;
    ++k;
  }
  L.conservativeResize(k, d + 1);
  lb.conservativeResize(k);

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(d + 1);
  x0(d) = (k > 0 ? std::min(lb.minCoeff(), opts.artificial_bound)
                 : opts.artificial_bound) -
          1.0;

  const Eigen::VectorXd c = Eigen::VectorXd::Unit(d + 1, d);
  LpOptions o = opts;
  o.artificial_bound =
      std::max(o.artificial_bound, 2.0 * std::abs(x0(d)) + 1.0);

  const LpResult lp = lp_maximize(L, lb, c, x0, o);
  out.status = lp.status;
  out.center = lp.x.head(d);
  out.radius = lp.x(d);
  if (lp.status == LpStatus::Unbounded)
    out.radius = std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace polyprof
