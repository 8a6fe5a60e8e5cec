#include "rvz/simplex.hpp"
#include <cstdio>
#include <cstdlib>

#include <Eigen/LU>
#include <cmath>
#include <limits>

#include "rvz/errors.hpp"

namespace rvz::lp {

namespace {

// Extended column: structural column of A, or a signed unit vector
// (slack/surplus/artificial) in one row.
struct ColMeta {
  int unit_row = -1;  // -1: structural
  double sign = 0.0;
};

struct Tableau {
  Eigen::MatrixXd T;         // (m+1) x (ncols+1); last row = reduced costs, last col = rhs
  std::vector<int> basis;    // basic column per row
  std::vector<bool> banned;  // columns excluded from entering
  std::vector<char> is_basic;
  int m = 0;
  int ncols = 0;

  double rhs(int i) const { return T(i, ncols); }
};

void pivot(Tableau& tab, int pr, int q) {
  auto& T = tab.T;
  T.row(pr) /= T(pr, q);
  Eigen::VectorXd col = T.col(q);
  col(pr) = 0.0;
  T.noalias() -= col * T.row(pr);
  T.col(q).setZero();
  T(pr, q) = 1.0;
  tab.is_basic[static_cast<std::size_t>(tab.basis[static_cast<std::size_t>(pr)])] = 0;
  tab.is_basic[static_cast<std::size_t>(q)] = 1;
  tab.basis[static_cast<std::size_t>(pr)] = q;
}

// Steepest-edge-flavoured pricing: most negative reduced cost normalized by
// the tableau column length. On heavily degenerate instances (symmetric games
// with many ties) this cuts iteration counts by orders of magnitude relative
// to the plain Dantzig rule.
int choose_entering(const Tableau& tab, const Options& opts, bool bland) {
  const int m = tab.m;
  if (bland) {
    for (int j = 0; j < tab.ncols; ++j) {
      if (tab.banned[static_cast<std::size_t>(j)] || tab.is_basic[static_cast<std::size_t>(j)])
        continue;
      if (tab.T(m, j) < -opts.cost_tol) return j;
    }
    return -1;
  }
  int best = -1;
  double best_score = 0.0;
  const auto col_norms2 = tab.T.topRows(m).colwise().squaredNorm();
  for (int j = 0; j < tab.ncols; ++j) {
    if (tab.banned[static_cast<std::size_t>(j)] || tab.is_basic[static_cast<std::size_t>(j)])
      continue;
    const double d = tab.T(m, j);
    if (d < -opts.cost_tol) {
      const double score = d / std::sqrt(1.0 + col_norms2[j]);
      if (score < best_score) {
        best_score = score;
        best = j;
      }
    }
  }
  return best;
}

// Harris-style two-pass ratio test. Pass 1 computes the step bound with a
// small feasibility slack so rows with tiny pivot entries cannot force
// near-singular pivots; pass 2 picks the largest pivot element among rows
// whose true ratio fits under that bound (numerical stability), breaking ties
// by smallest basic variable index (determinism). Negative rhs dust is
// clamped to zero. Under Bland's rule the strict minimum-ratio test with
// index tie-breaking is used instead. Returns -1 when the column is unbounded.
int choose_leaving(const Tableau& tab, int q, const Options& opts, bool strict) {
  double pivot_floor = opts.pivot_tol;
  bool any = false;
  for (int pass = 0; pass < 2 && !any; ++pass) {
    for (int i = 0; i < tab.m; ++i)
      if (tab.T(i, q) > pivot_floor) {
        any = true;
        break;
      }
    if (!any) pivot_floor = 1e-12;  // only near-zero entries: relax rather than claim unbounded
  }
  if (!any) return -1;

  if (strict) {
    int pr = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < tab.m; ++i) {
      const double a = tab.T(i, q);
      if (a > pivot_floor) {
        const double ratio = std::max(0.0, tab.rhs(i)) / a;
        if (pr < 0 || ratio < best_ratio ||
            (ratio == best_ratio &&
             tab.basis[static_cast<std::size_t>(i)] < tab.basis[static_cast<std::size_t>(pr)])) {
          best_ratio = ratio;
          pr = i;
        }
      }
    }
    return pr;
  }

  const double delta = 1e-9;
  double theta_max = std::numeric_limits<double>::infinity();
  for (int i = 0; i < tab.m; ++i) {
    const double a = tab.T(i, q);
    if (a > pivot_floor)
      theta_max = std::min(theta_max, (std::max(0.0, tab.rhs(i)) + delta) / a);
  }
  int pr = -1;
  double best_pivot = 0.0;
  for (int i = 0; i < tab.m; ++i) {
    const double a = tab.T(i, q);
    if (a > pivot_floor) {
      const double ratio = std::max(0.0, tab.rhs(i)) / a;
      if (ratio <= theta_max) {
        if (a > best_pivot ||
            (a == best_pivot && pr >= 0 &&
             tab.basis[static_cast<std::size_t>(i)] < tab.basis[static_cast<std::size_t>(pr)])) {
          best_pivot = a;
          pr = i;
        }
      }
    }
  }
  return pr;
}

class Solver {
 public:
  Solver(const Problem& prob, const Options& opts);
  Solution solve();

 private:
  enum class Segment { Optimal, Unbounded, Paused, IterCap };

  Segment run_segment(long budget);
  Segment drive();
  void set_cost_row();
  void refactorize();
  Eigen::VectorXd extended_column(int j) const;

  Options opts_;
  int m_ = 0, n_ = 0, ncols_ = 0, slack0_ = 0, art0_ = 0, n_art_ = 0;
  Eigen::MatrixXd A_;      // normalized structural matrix
  Eigen::VectorXd b_;      // normalized rhs (>= 0)
  Eigen::VectorXd c_;      // structural objective (maximize)
  Eigen::VectorXd c_ext_;  // current-phase extended costs
  std::vector<ColMeta> meta_;
  std::vector<Rel> rel_;
  std::vector<double> row_sign_;
  std::vector<int> art_col_;
  Tableau tab_;
  long iters_ = 0;
  long max_iters_ = 0;
  bool refactor_enabled_ = false;
  bool bland_ = false;
  int degenerate_streak_ = 0;
};

Solver::Solver(const Problem& prob, const Options& opts) : opts_(opts) {
  m_ = static_cast<int>(prob.A.rows());
  n_ = static_cast<int>(prob.A.cols());
  if (prob.b.size() != m_ || prob.c.size() != n_)
    throw InputError("lp: inconsistent problem dimensions");
  rel_ = prob.rel;
  if (rel_.empty()) rel_.assign(static_cast<std::size_t>(m_), Rel::LE);
  if (static_cast<int>(rel_.size()) != m_) throw InputError("lp: relation list size mismatch");

  A_ = prob.A;
  b_ = prob.b;
  c_ = prob.c;
  row_sign_.assign(static_cast<std::size_t>(m_), 1.0);
  for (int i = 0; i < m_; ++i) {
    if (b_[i] < 0.0) {
      A_.row(i) = -A_.row(i);
      b_[i] = -b_[i];
      row_sign_[static_cast<std::size_t>(i)] = -1.0;
      if (rel_[static_cast<std::size_t>(i)] == Rel::LE)
        rel_[static_cast<std::size_t>(i)] = Rel::GE;
      else if (rel_[static_cast<std::size_t>(i)] == Rel::GE)
        rel_[static_cast<std::size_t>(i)] = Rel::LE;
    }
  }

  art_col_.assign(static_cast<std::size_t>(m_), -1);
  for (int i = 0; i < m_; ++i)
    if (rel_[static_cast<std::size_t>(i)] != Rel::LE) ++n_art_;
  slack0_ = n_;
  art0_ = n_ + m_;
  ncols_ = n_ + m_ + n_art_;

  meta_.resize(static_cast<std::size_t>(ncols_));
  tab_.m = m_;
  tab_.ncols = ncols_;
  tab_.T = Eigen::MatrixXd::Zero(m_ + 1, ncols_ + 1);
  tab_.T.topLeftCorner(m_, n_) = A_;
  tab_.T.col(ncols_).head(m_) = b_;
  tab_.basis.resize(static_cast<std::size_t>(m_));
  tab_.banned.assign(static_cast<std::size_t>(ncols_), false);
  tab_.is_basic.assign(static_cast<std::size_t>(ncols_), 0);

  int next_art = art0_;
  for (int i = 0; i < m_; ++i) {
    switch (rel_[static_cast<std::size_t>(i)]) {
      case Rel::LE:
        tab_.T(i, slack0_ + i) = 1.0;
        meta_[static_cast<std::size_t>(slack0_ + i)] = {i, 1.0};
        tab_.basis[static_cast<std::size_t>(i)] = slack0_ + i;
        tab_.is_basic[static_cast<std::size_t>(slack0_ + i)] = 1;
        break;
      case Rel::GE:
        tab_.T(i, slack0_ + i) = -1.0;
        meta_[static_cast<std::size_t>(slack0_ + i)] = {i, -1.0};
        tab_.T(i, next_art) = 1.0;
        meta_[static_cast<std::size_t>(next_art)] = {i, 1.0};
        art_col_[static_cast<std::size_t>(i)] = next_art;
        tab_.is_basic[static_cast<std::size_t>(next_art)] = 1;
        tab_.basis[static_cast<std::size_t>(i)] = next_art++;
        break;
      case Rel::EQ:
        // the slack slot for an EQ row stays an all-zero banned column
        tab_.banned[static_cast<std::size_t>(slack0_ + i)] = true;
        tab_.T(i, next_art) = 1.0;
        meta_[static_cast<std::size_t>(next_art)] = {i, 1.0};
        art_col_[static_cast<std::size_t>(i)] = next_art;
        tab_.is_basic[static_cast<std::size_t>(next_art)] = 1;
        tab_.basis[static_cast<std::size_t>(i)] = next_art++;
        break;
    }
  }

  max_iters_ =
      opts_.max_iters > 0 ? opts_.max_iters : 4000 + 30L * (static_cast<long>(m_) + ncols_);
  refactor_enabled_ = m_ >= 160;
}

Eigen::VectorXd Solver::extended_column(int j) const {
  if (j < n_) return A_.col(j);
  Eigen::VectorXd col = Eigen::VectorXd::Zero(m_);
  const ColMeta& meta = meta_[static_cast<std::size_t>(j)];
  if (meta.unit_row >= 0) col[meta.unit_row] = meta.sign;
  return col;
}

void Solver::set_cost_row() {
  tab_.T.row(m_).setZero();
  tab_.T.row(m_).head(ncols_) = -c_ext_.transpose();
  for (int i = 0; i < m_; ++i) {
    const double cb = c_ext_[tab_.basis[static_cast<std::size_t>(i)]];
    if (cb != 0.0) tab_.T.row(m_) += cb * tab_.T.row(i);
  }
  for (int i = 0; i < m_; ++i) tab_.T(m_, tab_.basis[static_cast<std::size_t>(i)]) = 0.0;
}

// Rebuilds the tableau body from the original data for the current basis.
// Rank-1 tableau updates accumulate error along the pivot path; rebuilding
// resets it, and optimality is only ever declared on a rebuilt tableau.
void Solver::refactorize() {
  Eigen::MatrixXd B(m_, m_);
  for (int i = 0; i < m_; ++i)
    B.col(i) = extended_column(tab_.basis[static_cast<std::size_t>(i)]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
  Eigen::MatrixXd block(m_, ncols_ + 1);
  for (int j = 0; j < ncols_; ++j) block.col(j) = extended_column(j);
  block.col(ncols_) = b_;
  tab_.T.topRows(m_) = lu.solve(block);
  set_cost_row();
  if (std::getenv("RVZ_LP_DEBUG") != nullptr) {
    double minr = 0.0, resid = (B * tab_.T.col(ncols_).head(m_) - b_).cwiseAbs().maxCoeff();
    for (int i = 0; i < m_; ++i) minr = std::min(minr, tab_.rhs(i));
    std::fprintf(stderr, "[refactor] iters=%ld min_rhs=%.3g residual=%.3g\n", iters_, minr,
                 resid);
  }
}

Solver::Segment Solver::run_segment(long budget) {
  long taken = 0;
  while (true) {
    if (iters_ >= max_iters_) return Segment::IterCap;
    if (taken >= budget) return Segment::Paused;
    const int q = choose_entering(tab_, opts_, bland_);
    if (q < 0) return Segment::Optimal;
    const int pr = choose_leaving(tab_, q, opts_, bland_);
    if (pr < 0) return Segment::Unbounded;
    ++iters_;
    ++taken;
    const double ratio = tab_.rhs(pr) / tab_.T(pr, q);
    if (ratio <= 1e-12) {
      if (++degenerate_streak_ > opts_.bland_after) bland_ = true;
    } else {
      degenerate_streak_ = 0;
      bland_ = false;
    }
    pivot(tab_, pr, q);
  }
}

Solver::Segment Solver::drive() {
  const long segment = refactor_enabled_ ? 700 : std::numeric_limits<long>::max() / 2;
  const bool debug = std::getenv("RVZ_LP_DEBUG") != nullptr;
  int optimal_rechecks = 0;
  while (true) {
    const Segment st = run_segment(segment);
    if (debug) {
      double obj = 0.0, minr = 0.0;
      int neg = 0;
      for (int i = 0; i < m_; ++i) {
        obj += c_ext_[tab_.basis[static_cast<std::size_t>(i)]] * tab_.rhs(i);
        minr = std::min(minr, tab_.rhs(i));
        if (tab_.rhs(i) < -1e-9) ++neg;
      }
      std::fprintf(stderr, "[lp] iters=%ld st=%d obj=%.6g min_rhs=%.3g neg=%d bland=%d\n",
                   iters_, static_cast<int>(st), obj, minr, neg, static_cast<int>(bland_));
    }
    if (st == Segment::Unbounded || st == Segment::IterCap) return st;
    if (st == Segment::Paused) {
      if (refactor_enabled_) refactorize();
      continue;
    }
    if (!refactor_enabled_) return Segment::Optimal;
    refactorize();
    if (choose_entering(tab_, opts_, false) < 0) return Segment::Optimal;
    if (++optimal_rechecks > 80) return Segment::IterCap;
  }
}

Solution Solver::solve() {
  Solution sol;
  sol.x = Eigen::VectorXd::Zero(n_);
  sol.dual = Eigen::VectorXd::Zero(m_);

  if (n_art_ > 0) {
    c_ext_ = Eigen::VectorXd::Zero(ncols_);
    for (int j = art0_; j < ncols_; ++j) c_ext_[j] = -1.0;
    set_cost_row();
    const Segment st = drive();
    sol.iterations = iters_;
    if (st == Segment::IterCap) {
      sol.status = Status::IterLimit;
      return sol;
    }
    double art_mass = 0.0;
    for (int i = 0; i < m_; ++i)
      if (tab_.basis[static_cast<std::size_t>(i)] >= art0_)
        art_mass += std::max(0.0, tab_.rhs(i));
    if (art_mass > opts_.feas_tol) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Pivot leftover artificials out of the basis where possible.
    for (int i = 0; i < m_; ++i) {
      if (tab_.basis[static_cast<std::size_t>(i)] >= art0_) {
        for (int j = 0; j < art0_; ++j) {
          if (tab_.banned[static_cast<std::size_t>(j)]) continue;
          if (std::abs(tab_.T(i, j)) > 1e-8) {
            pivot(tab_, i, j);
            break;
          }
        }
      }
    }
    for (int j = art0_; j < ncols_; ++j) tab_.banned[static_cast<std::size_t>(j)] = true;
  }

  c_ext_ = Eigen::VectorXd::Zero(ncols_);
  c_ext_.head(n_) = c_;
  set_cost_row();
  const Segment st = drive();
  sol.iterations = iters_;
  sol.status = st == Segment::Optimal    ? Status::Optimal
               : st == Segment::Unbounded ? Status::Unbounded
                                          : Status::IterLimit;
  if (sol.status == Status::Unbounded) return sol;

  for (int i = 0; i < m_; ++i) {
    const int bi = tab_.basis[static_cast<std::size_t>(i)];
    if (bi < n_) sol.x[bi] = std::max(0.0, tab_.rhs(i));
  }
  sol.objective = c_.dot(sol.x);

  // Duals from the supplementary columns: the reduced cost of the slack (LE),
  // the negated reduced cost of the surplus (GE), or the reduced cost of the
  // artificial (EQ); undo any row negation.
  for (int i = 0; i < m_; ++i) {
    double y = 0.0;
    switch (rel_[static_cast<std::size_t>(i)]) {
      case Rel::LE:
        y = tab_.T(m_, slack0_ + i);
        break;
      case Rel::GE:
        y = -tab_.T(m_, slack0_ + i);
        break;
      case Rel::EQ:
        y = tab_.T(m_, art_col_[static_cast<std::size_t>(i)]);
        break;
    }
    sol.dual[i] = row_sign_[static_cast<std::size_t>(i)] * y;
  }
  return sol;
}

}  // namespace

Solution maximize(const Problem& prob, const Options& opts) {
  Solver solver(prob, opts);
  return solver.solve();
}

}  // namespace rvz::lp
