#pragma once

#include <Eigen/Core>
#include <vector>

namespace rvz::lp {

enum class Rel { LE, GE, EQ };

enum class Status { Optimal, Infeasible, Unbounded, IterLimit };

struct Options {
  double cost_tol = 1e-10;  // reduced-cost optimality tolerance
  double pivot_tol = 1e-7;  // minimum admissible pivot magnitude
  double feas_tol = 1e-9;   // phase-1 residual accepted as feasible
  long max_iters = 0;       // 0: 4000 + 30*(rows+cols)
  int bland_after = 400;    // consecutive degenerate pivots before Bland's rule
};

/// maximize c.x  subject to  A x (rel) b,  x >= 0.
struct Problem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::vector<Rel> rel;  // one per row; empty means all LE
};

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;     // structural variables
  Eigen::VectorXd dual;  // simplex multiplier per original row
  long iterations = 0;
};

/// Dense two-phase primal simplex with deterministic pivoting (Dantzig rule,
/// smallest-index ties, automatic switch to Bland's rule after a degenerate
/// streak). Rows with b >= 0 and relation LE start feasible, so pure-LE
/// problems skip phase 1 entirely.
Solution maximize(const Problem& prob, const Options& opts = {});

}  // namespace rvz::lp
