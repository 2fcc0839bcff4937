#include "centerstone/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace centerstone {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;

enum class StepOut { Optimal, Pivoted, Unbounded };

// Tableau simplex over the given columns.  basis[i] is the column basic in
// row i; the objective row carries reduced costs.  Entering rule is Dantzig
// with a Bland fallback once the iteration count suggests cycling.
struct Tableau {
  Eigen::MatrixXd t;          // (m+1) x (ncols+1), last col = rhs
  std::vector<int> basis;     // size m
  int m, ncols;

  double rhs(int r) const { return t(r, ncols); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int r = 0; r <= m; ++r) {
      if (r == row) continue;
      double f = t(r, col);
      if (f != 0.0) t.row(r) -= f * t.row(row);
    }
    basis[row] = col;
  }

  StepOut step(bool bland, const std::vector<char>& allowed) {
    int enter = -1;
    double best = -kCostTol;
    for (int j = 0; j < ncols; ++j) {
      if (!allowed[j]) continue;
      double r = t(m, j);
      if (bland) {
        if (r < -kCostTol) { enter = j; break; }
      } else if (r < best) {
        best = r;
        enter = j;
      }
    }
    if (enter < 0) return StepOut::Optimal;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      double a = t(r, enter);
      if (a > kPivotTol) {
        double ratio = rhs(r) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leave < 0 || basis[r] < basis[leave]))) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) return StepOut::Unbounded;
    pivot(leave, enter);
    return StepOut::Pivoted;
  }
};

}  // namespace

LpResult solve_equality_lp(const Eigen::MatrixXd& A0, const Eigen::VectorXd& b0,
                           const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A0.rows());
  const int n = static_cast<int>(A0.cols());
  LpResult out;

  Eigen::MatrixXd A = A0;
  Eigen::VectorXd b = b0;
  std::vector<int> row_sign(m, 1);
  for (int r = 0; r < m; ++r) {
    if (b(r) < 0) {
      A.row(r) *= -1.0;
      b(r) = -b(r);
      row_sign[r] = -1;
    }
  }

  const int ncols = n + m;  // original columns + one artificial per row
  Tableau tab;
  tab.m = m;
  tab.ncols = ncols;
  tab.t = Eigen::MatrixXd::Zero(m + 1, ncols + 1);
  tab.t.block(0, 0, m, n) = A;
  tab.t.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
  tab.t.col(ncols).head(m) = b;
  tab.basis.resize(m);
  for (int r = 0; r < m; ++r) tab.basis[r] = n + r;

  std::vector<char> allowed(ncols, 1);
  const int iter_cap = 500 + 60 * m;

  // Phase 1: minimize the artificial sum.
  for (int j = 0; j < ncols; ++j) tab.t(m, j) = (j >= n) ? 1.0 : 0.0;
  tab.t(m, ncols) = 0.0;
  for (int r = 0; r < m; ++r) tab.t.row(m) -= tab.t.row(r);  // price out basis

  int it = 0;
  while (true) {
    StepOut s = tab.step(it > iter_cap / 2, allowed);
    if (s != StepOut::Pivoted) break;
    if (++it > iter_cap) break;
  }
  out.iterations = it;
  double scale = 1.0 + b.cwiseAbs().maxCoeff();
  if (-tab.t(m, ncols) > 1e-7 * scale) {
    out.status = LpResult::Status::Infeasible;
    return out;
  }

  // Drive any artificial still basic (degenerate rows) out where possible.
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.t(r, j)) > 1e-8) {
        tab.pivot(r, j);
        break;
      }
    }
  }

  // Phase 2: original objective; artificials barred from entering.
  for (int j = n; j < ncols; ++j) allowed[j] = 0;
  for (int j = 0; j < ncols; ++j) tab.t(m, j) = (j < n) ? c(j) : 0.0;
  tab.t(m, ncols) = 0.0;
  for (int r = 0; r < m; ++r) {
    double cb = (tab.basis[r] < n) ? c(tab.basis[r]) : 0.0;
    if (cb != 0.0) tab.t.row(m) -= cb * tab.t.row(r);
  }

  it = 0;
  while (true) {
    StepOut s = tab.step(it > iter_cap / 2, allowed);
    if (s == StepOut::Unbounded) {
      out.status = LpResult::Status::Unbounded;
      return out;
    }
    if (s == StepOut::Optimal) break;
    if (++it > iter_cap) break;
  }
  out.iterations += it;

  out.x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] < n) out.x(tab.basis[r]) = tab.rhs(r);
  }
  out.objective = c.dot(out.x);
  out.multipliers = Eigen::VectorXd::Zero(m);
  for (int r = 0; r < m; ++r) {
    out.multipliers(r) = row_sign[r] * (-tab.t(m, n + r));
  }
  out.status = LpResult::Status::Optimal;
  return out;
}

MarginResult solve_margin_lp(const Eigen::MatrixXd& G, const Eigen::VectorXd& h) {
  const int m = static_cast<int>(G.rows());
  const int d = static_cast<int>(G.cols());
  MarginResult out;
  if (m == 0) { out.feasible = false; return out; }

  // Dual of  max t s.t. Gx + t <= h :  min h.w  s.t.  G^T w = 0, sum w = 1, w >= 0.
  // The primal is feasible for any finite system (send t to -inf), so a dual
  // infeasibility can only mean the primal margin is unbounded above.
  Eigen::MatrixXd A(d + 1, m);
  A.topRows(d) = G.transpose();
  A.row(d).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  b(d) = 1.0;
  LpResult lp = solve_equality_lp(A, b, h);
  if (lp.status == LpResult::Status::Infeasible) {
    out.feasible = true;
    out.bounded = false;
    return out;
  }
  if (lp.status != LpResult::Status::Optimal) {
    out.feasible = false;
    return out;
  }
  out.feasible = true;
  out.margin = lp.objective;
  out.x = lp.multipliers.head(d);
  return out;
}

}  // namespace centerstone
