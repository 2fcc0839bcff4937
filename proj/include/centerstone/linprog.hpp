#pragma once

#include <Eigen/Dense>

#include "centerstone/types.hpp"

namespace centerstone {

// Dense two-phase simplex for  min c.x  s.t.  A x = b, x >= 0.
// Sized for problems with a handful of rows and up to ~2e5 columns, which is
// what the depth-region and hull-membership formulations produce.
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;            // primal solution, empty unless Optimal
  Eigen::VectorXd multipliers;  // row duals y with y.A_j <= c_j at optimum
  int iterations = 0;
};

LpResult solve_equality_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c);

// max t  s.t.  G x + t <= h   (rows of G unit-normalized by the caller).
// Solved through the equality-form dual so the tableau stays row-lean even
// with tens of thousands of constraints.  Returns the maximizing x and t.
struct MarginResult {
  bool feasible = false;   // false when the constraint system has no point at all
  bool bounded = true;
  double margin = 0.0;     // optimal t
  Eigen::VectorXd x;
};

MarginResult solve_margin_lp(const Eigen::MatrixXd& G, const Eigen::VectorXd& h);

}  // namespace centerstone
