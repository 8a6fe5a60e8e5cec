#include "rvz/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "rvz/errors.hpp"

namespace rvz {

namespace {

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& K, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = K(rows[i], cols[j]);
  return out;
}

void check_subset_nonempty(const std::vector<int>& idx, const char* what) {
  if (idx.empty()) throw InputError(std::string(what) + ": empty subset");
}

DiscreteMeasure measure_from_vector(const std::vector<int>& atoms, Eigen::VectorXd w) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    if (!(w[j] > 1e-14)) w[j] = 0.0;
    total += w[j];
  }
  if (!(total > 0.0)) return DiscreteMeasure::uniform(atoms);
  return DiscreteMeasure::normalized(atoms, std::move(w));
}

struct DenseGame {
  Eigen::VectorXd mu;    // maximin column strategy (over H positions)
  Eigen::VectorXd nu;    // minimax column strategy
  Eigen::VectorXd lam_lo;  // row strategy certifying the maximin value from above
  Eigen::VectorXd lam_hi;  // row strategy certifying the minimax value from below
  bool optimal = false;
  long iterations = 0;
};

// Both orientations of the matrix game with payoff K_LH (rows: L, cols: H),
// via the positive-shift normalization B = K + 1 and the bounded LPs
//   maximin:  max 1.z  s.t. B^T z <= 1, z >= 0   (dual -> mu)
//   minimax:  max 1.s  s.t. B  s <= 1, s >= 0   (primal -> nu)
// When the payoff is symmetric (diagonal instances) the two LPs are
// transposes of one another, so a single solve supplies both witnesses: the
// dual is the maximin measure and the primal, read as a column strategy, is a
// minimax witness.
DenseGame dense_game(const Eigen::MatrixXd& K_LH, const lp::Options& lopts, bool symmetric) {
  const Eigen::Index nl = K_LH.rows(), nh = K_LH.cols();
  const Eigen::MatrixXd B = K_LH.array() + 1.0;
  DenseGame g;

  lp::Problem p1;
  p1.A = B.transpose();
  p1.b = Eigen::VectorXd::Ones(nh);
  p1.c = Eigen::VectorXd::Ones(nl);
  const lp::Solution s1 = lp::maximize(p1, lopts);
  g.mu = s1.dual.cwiseMax(0.0);
  g.lam_lo = s1.x.cwiseMax(0.0);

  if (symmetric) {
    g.optimal = s1.status == lp::Status::Optimal;
    g.iterations = s1.iterations;
    g.nu = g.lam_lo;
    g.lam_hi = g.mu;
    return g;
  }

  lp::Problem p2;
  p2.A = B;
  p2.b = Eigen::VectorXd::Ones(nl);
  p2.c = Eigen::VectorXd::Ones(nh);
  const lp::Solution s2 = lp::maximize(p2, lopts);

  g.optimal = s1.status == lp::Status::Optimal && s2.status == lp::Status::Optimal;
  g.iterations = s1.iterations + s2.iterations;
  g.nu = s2.x.cwiseMax(0.0);
  g.lam_hi = s2.dual.cwiseMax(0.0);
  return g;
}

long tableau_cells(std::size_t nrows, std::size_t ncols) {
  // Pure-LE game LP: (rows+1) x (cols + rows + 1).
  return static_cast<long>((nrows + 1) * (ncols + nrows + 1));
}

std::vector<int> spread_seed(const std::vector<int>& pool, int count) {
  std::vector<int> out;
  const int n = static_cast<int>(pool.size());
  const int k = std::min(count, n);
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const int pos = static_cast<int>(static_cast<long>(i) * n / k);
    out.push_back(pool[static_cast<std::size_t>(pos)]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Adds up to `budget` indices from `order` (most violating first) that are not
// yet members; returns how many were added.
int add_new(std::vector<int>& members, std::set<int>& member_set,
            const std::vector<int>& order, int budget) {
  int added = 0;
  for (int idx : order) {
    if (added >= budget) break;
    if (member_set.insert(idx).second) {
      members.push_back(idx);
      ++added;
    }
  }
  return added;
}

std::vector<int> order_by(const Eigen::VectorXd& score, const std::vector<int>& labels,
                          bool ascending) {
  std::vector<int> perm(labels.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    const double sa = score[a], sb = score[b];
    if (sa != sb) return ascending ? sa < sb : sa > sb;
    return labels[static_cast<std::size_t>(a)] < labels[static_cast<std::size_t>(b)];
  });
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = labels[static_cast<std::size_t>(perm[i])];
  return out;
}

}  // namespace

Eigen::VectorXd potential_values(const FiniteKernelSpace& space, const DiscreteMeasure& mu,
                                 const std::vector<int>& eval_indices) {
  const auto& K = space.kernel();
  const int n = space.size();
  for (int a : mu.atoms())
    if (a < 0 || a >= n) throw InputError("potential: atom index out of range");
  Eigen::VectorXd out(eval_indices.size());
  for (std::size_t i = 0; i < eval_indices.size(); ++i) {
    const int x = eval_indices[i];
    if (x < 0 || x >= n) throw InputError("potential: evaluation index out of range");
    double acc = 0.0;
    const auto& atoms = mu.atoms();
    for (std::size_t j = 0; j < atoms.size(); ++j)
      acc += mu.weights()[static_cast<Eigen::Index>(j)] * K(x, atoms[j]);
    out[static_cast<Eigen::Index>(i)] = acc;
  }
  return out;
}

PotentialProfile potential(const FiniteKernelSpace& space, const DiscreteMeasure& mu,
                           const std::vector<int>& eval_indices) {
  check_subset_nonempty(eval_indices, "potential");
  return PotentialProfile{mu, eval_indices, potential_values(space, mu, eval_indices)};
}

PotentialProfile potential(const FiniteKernelSpace& space, const DiscreteMeasure& mu,
                           const std::string& subset_name) {
  return potential(space, mu, space.subset(subset_name));
}

Interval average_set_of_measure(const FiniteKernelSpace& space, const DiscreteMeasure& mu,
                                const std::string& subset_name) {
  const auto prof = potential(space, mu, subset_name);
  return Interval(prof.values.minCoeff(), prof.values.maxCoeff());
}

namespace {

GameSolution finalize_solution(const FiniteKernelSpace& space, const std::vector<int>& H,
                               const std::vector<int>& L, DiscreteMeasure mu, DiscreteMeasure nu,
                               bool diagonal, bool lp_ok, bool used_refinement, long iters,
                               double tol) {
  Eigen::VectorXd pot_mu = potential_values(space, mu, L);
  Eigen::VectorXd pot_nu = potential_values(space, nu, L);
  GameSolution out{.value_lo = pot_mu.minCoeff(),
                   .value_hi = pot_nu.maxCoeff(),
                   .mu_star = std::move(mu),
                   .nu_star = std::move(nu),
                   .diagonal = diagonal,
                   .used_refinement = used_refinement,
                   .lp_iterations = iters};
  out.gap = out.value_hi - out.value_lo;
  out.converged = lp_ok && (!diagonal || out.gap <= tol);
  // For H ⊆ L the bracket ordering is a theorem (any feasible pair of
  // witnesses certifies value_lo <= q_lower <= q <= value_hi); a violation
  // indicates a kernel/extraction bug rather than solver inaccuracy.
  std::set<int> lset(L.begin(), L.end());
  bool subset = true;
  for (int h : H)
    if (lset.find(h) == lset.end()) subset = false;
  if (subset && out.value_lo > out.value_hi + 1e-9 * (1.0 + std::abs(out.value_hi)))
    throw InternalConsistencyError("game_value: certified bracket inverted on nested subsets");
  return out;
}

GameSolution solve_dense_path(const FiniteKernelSpace& space, const std::vector<int>& H,
                              const std::vector<int>& L, bool diagonal, const GameOptions& opts) {
  const Eigen::MatrixXd K_LH = submatrix(space.kernel(), L, H);
  const DenseGame g = dense_game(K_LH, opts.lp, /*symmetric=*/H == L);
  return finalize_solution(space, H, L, measure_from_vector(H, g.mu),
                           measure_from_vector(H, g.nu), diagonal, g.optimal, false,
                           g.iterations, opts.tol);
}

// Cutting-plane loop for the diagonal case: grow one working set S, solve the
// dense subgame on S x S, certify both sides against the full set by direct
// potential scans, and add the most violating points.
GameSolution solve_refined_diagonal(const FiniteKernelSpace& space, const std::vector<int>& H,
                                    const GameOptions& opts) {
  std::vector<int> S = spread_seed(H, opts.refine_seed);
  std::set<int> sset(S.begin(), S.end());

  double best_lo = -std::numeric_limits<double>::infinity();
  double best_hi = std::numeric_limits<double>::infinity();
  std::optional<DiscreteMeasure> best_mu, best_nu;
  long iters = 0;
  bool lp_ok = true;

  for (int round = 0; round < opts.refine_rounds; ++round) {
    const Eigen::MatrixXd K_SS = submatrix(space.kernel(), S, S);
    const DenseGame g = dense_game(K_SS, opts.lp, /*symmetric=*/true);
    iters += g.iterations;
    lp_ok = g.optimal;

    DiscreteMeasure mu = measure_from_vector(S, g.mu);
    DiscreteMeasure nu = measure_from_vector(S, g.nu);
    const Eigen::VectorXd pot_mu = potential_values(space, mu, H);
    const Eigen::VectorXd pot_nu = potential_values(space, nu, H);
    const double lo = pot_mu.minCoeff();
    const double hi = pot_nu.maxCoeff();
    if (lo > best_lo) {
      best_lo = lo;
      best_mu = std::move(mu);
    }
    if (hi < best_hi) {
      best_hi = hi;
      best_nu = std::move(nu);
    }
    if (best_hi - best_lo <= opts.tol) break;
    if (static_cast<int>(S.size()) >= opts.refine_support_cap) break;
    if (static_cast<int>(S.size()) >= static_cast<int>(H.size())) break;

    const int half = std::max(1, opts.refine_add / 2);
    int added = 0;
    added += add_new(S, sset, order_by(pot_mu, H, /*ascending=*/true), half);
    added += add_new(S, sset, order_by(pot_nu, H, /*ascending=*/false), half);
    if (added == 0) break;
    std::sort(S.begin(), S.end());
  }

  if (!best_mu) best_mu = DiscreteMeasure::uniform(H);
  if (!best_nu) best_nu = DiscreteMeasure::uniform(H);
  GameSolution out = finalize_solution(space, H, H, *best_mu, *best_nu, true, lp_ok, true,
                                       iters, opts.tol);
  // finalize recomputes the witnesses' own bounds; keep the sharper of the
  // tracked and recomputed certificates (they agree up to float dust).
  out.converged = lp_ok && out.gap <= opts.tol;
  return out;
}

// General (H, L) refinement: one loop per orientation, each with its own
// working sets and scan-based certificates.
struct OrientationOut {
  std::optional<DiscreteMeasure> measure;
  double cert = 0.0;      // measure-side certificate (lo for maximin, hi for minimax)
  double other = 0.0;     // row-strategy certificate on the opposite side
  bool converged = false;
  long iters = 0;
};

OrientationOut solve_refined_orientation(const FiniteKernelSpace& space,
                                         const std::vector<int>& H, const std::vector<int>& L,
                                         bool maximin, const GameOptions& opts) {
  std::vector<int> W = spread_seed(H, opts.refine_seed);
  std::vector<int> R = spread_seed(L, opts.refine_seed);
  std::set<int> wset(W.begin(), W.end()), rset(R.begin(), R.end());
  const auto& K = space.kernel();

  OrientationOut best;
  double best_cert = maximin ? -std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::infinity();
  double best_other = maximin ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();

  for (int round = 0; round < opts.refine_rounds; ++round) {
    const Eigen::MatrixXd K_RW = submatrix(K, R, W);
    const DenseGame g = dense_game(K_RW, opts.lp, /*symmetric=*/false);
    best.iters += g.iterations;

    DiscreteMeasure m = measure_from_vector(W, maximin ? g.mu : g.nu);
    const Eigen::VectorXd pot = potential_values(space, m, L);

    // Row strategy priced over all of H.
    const Eigen::VectorXd lam = (maximin ? g.lam_lo : g.lam_hi);
    Eigen::VectorXd row_price = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(H.size()));
    const double lam_total = lam.sum();
    if (lam_total > 0.0) {
      for (std::size_t j = 0; j < H.size(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < R.size(); ++i)
          acc += lam[static_cast<Eigen::Index>(i)] * K(R[i], H[j]);
        row_price[static_cast<Eigen::Index>(j)] = acc / lam_total;
      }
    }

    if (maximin) {
      const double lo = pot.minCoeff();
      const double hi = lam_total > 0.0 ? row_price.maxCoeff()
                                        : std::numeric_limits<double>::infinity();
      if (lo > best_cert) {
        best_cert = lo;
        best.measure = m;
      }
      best_other = std::min(best_other, hi);
      if (best_other - best_cert <= opts.tol) {
        best.converged = true;
        break;
      }
      int added = add_new(R, rset, order_by(pot, L, true), std::max(1, opts.refine_add / 2));
      added += add_new(W, wset, order_by(row_price, H, false), std::max(1, opts.refine_add / 2));
      if (added == 0) break;
    } else {
      const double hi = pot.maxCoeff();
      const double lo = lam_total > 0.0 ? row_price.minCoeff()
                                        : -std::numeric_limits<double>::infinity();
      if (hi < best_cert) {
        best_cert = hi;
        best.measure = m;
      }
      best_other = std::max(best_other, lo);
      if (best_cert - best_other <= opts.tol) {
        best.converged = true;
        break;
      }
      int added = add_new(R, rset, order_by(pot, L, false), std::max(1, opts.refine_add / 2));
      added += add_new(W, wset, order_by(row_price, H, true), std::max(1, opts.refine_add / 2));
      if (added == 0) break;
    }
    if (static_cast<int>(W.size()) >= opts.refine_support_cap ||
        static_cast<int>(R.size()) >= opts.refine_support_cap)
      break;
    std::sort(W.begin(), W.end());
    std::sort(R.begin(), R.end());
  }
  best.cert = best_cert;
  best.other = best_other;
  if (!best.measure) best.measure = DiscreteMeasure::uniform(H);
  return best;
}

}  // namespace

GameSolution game_value(const FiniteKernelSpace& space, const std::vector<int>& H,
                        const std::vector<int>& L, const GameOptions& opts) {
  check_subset_nonempty(H, "game_value H");
  check_subset_nonempty(L, "game_value L");
  if (!(opts.tol > 0.0)) throw InputError("game_value: tol must be positive");
  const bool diagonal = same_index_set(H, L);

  const long cells = std::max(tableau_cells(H.size(), L.size()), tableau_cells(L.size(), H.size()));
  if (cells <= opts.dense_cell_budget) return solve_dense_path(space, H, L, diagonal, opts);

  if (diagonal) return solve_refined_diagonal(space, H, opts);

  const OrientationOut lo_side = solve_refined_orientation(space, H, L, /*maximin=*/true, opts);
  const OrientationOut hi_side = solve_refined_orientation(space, H, L, /*maximin=*/false, opts);
  GameSolution out = finalize_solution(space, H, L, *lo_side.measure, *hi_side.measure, false,
                                       true, true, lo_side.iters + hi_side.iters, opts.tol);
  out.converged = lo_side.converged && hi_side.converged;
  return out;
}

GameSolution game_value(const FiniteKernelSpace& space, const std::string& H_name,
                        const std::string& L_name, const GameOptions& opts) {
  return game_value(space, space.subset(H_name), space.subset(L_name), opts);
}

Interval average_interval(const FiniteKernelSpace& space, const std::string& H_name,
                          const std::string& L_name, const GameOptions& opts) {
  const GameSolution g = game_value(space, H_name, L_name, opts);
  return Interval(g.value_lo, g.value_hi);
}

std::optional<DiscreteMeasure> invariant_measure(const FiniteKernelSpace& space,
                                                 const std::vector<int>& S, double tol) {
  check_subset_nonempty(S, "invariant_measure");
  if (!(tol > 0.0)) throw InputError("invariant_measure: tol must be positive");
  const int k = static_cast<int>(S.size());
  const Eigen::MatrixXd K_SS = submatrix(space.kernel(), S, S);

  // Variables: [ weights (k) | t_lo | t_hi ], maximize t_lo - t_hi subject to
  //   K w - t_hi <= 0,   K w - t_lo >= 0   (row-wise),   sum w = 1.
  const int nvar = k + 2;
  lp::Problem prob;
  prob.A = Eigen::MatrixXd::Zero(2 * k + 1, nvar);
  prob.b = Eigen::VectorXd::Zero(2 * k + 1);
  prob.c = Eigen::VectorXd::Zero(nvar);
  prob.rel.assign(static_cast<std::size_t>(2 * k + 1), lp::Rel::LE);
  prob.A.topLeftCorner(k, k) = K_SS;
  prob.A.block(0, k + 1, k, 1).setConstant(-1.0);
  prob.A.block(k, 0, k, k) = K_SS;
  prob.A.block(k, k, k, 1).setConstant(-1.0);
  for (int i = 0; i < k; ++i) prob.rel[static_cast<std::size_t>(k + i)] = lp::Rel::GE;
  prob.A.row(2 * k).head(k).setOnes();
  prob.rel[static_cast<std::size_t>(2 * k)] = lp::Rel::EQ;
  prob.b[2 * k] = 1.0;
  prob.c[k] = 1.0;
  prob.c[k + 1] = -1.0;

  const lp::Solution sol = lp::maximize(prob, lp::Options{});
  if (sol.status != lp::Status::Optimal) return std::nullopt;
  DiscreteMeasure mu = measure_from_vector(S, sol.x.head(k));
  const Eigen::VectorXd pot = potential_values(space, mu, S);
  const double osc = pot.maxCoeff() - pot.minCoeff();
  if (osc <= tol) return mu;
  return std::nullopt;
}

std::optional<DiscreteMeasure> invariant_measure(const FiniteKernelSpace& space,
                                                 const std::string& subset_name, double tol) {
  return invariant_measure(space, space.subset(subset_name), tol);
}

QuasiInvariantResult quasi_invariant_search(const FiniteKernelSpace& space,
                                            const std::vector<int>& S, double eps) {
  check_subset_nonempty(S, "quasi_invariant_search");
  if (!(eps > 0.0)) throw InputError("quasi_invariant_search: eps must be positive");
  // The oscillation LP inside invariant_measure already minimizes the gap
  // functional; run it with a tolerance that accepts any oscillation so the
  // minimizer itself comes back even when it is not eps-flat.
  const auto minimizer = invariant_measure(space, S, std::numeric_limits<double>::infinity());
  DiscreteMeasure mu = minimizer ? *minimizer : DiscreteMeasure::uniform(S);
  const Eigen::VectorXd pot = potential_values(space, mu, S);
  const double gap = pot.maxCoeff() - pot.minCoeff();
  return QuasiInvariantResult{std::move(mu), gap, gap <= eps};
}

QuasiInvariantResult quasi_invariant_search(const FiniteKernelSpace& space,
                                            const std::string& subset_name, double eps) {
  return quasi_invariant_search(space, space.subset(subset_name), eps);
}

RationalCounts rationalize_measure(const DiscreteMeasure& sigma, double eps, long m_budget) {
  if (!(eps > 0.0)) throw InputError("rationalize_measure: eps must be positive");
  if (m_budget < 1) throw InputError("rationalize_measure: empty budget");
  const Eigen::VectorXd& w = sigma.weights();
  const int k = sigma.support_size();
  std::vector<long> lo(static_cast<std::size_t>(k)), hi(static_cast<std::size_t>(k));

  for (long m = 1; m <= m_budget; ++m) {
    bool feasible = true;
    long lo_sum = 0, hi_sum = 0;
    for (int j = 0; j < k && feasible; ++j) {
      const double wl = (1.0 - eps) * w[j];
      const double wh = (1.0 + eps) * w[j];
      long cl = std::max<long>(1, static_cast<long>(std::ceil(wl * static_cast<double>(m) - 1e-12)));
      while (static_cast<double>(cl) / static_cast<double>(m) < wl) ++cl;
      long ch = static_cast<long>(std::floor(wh * static_cast<double>(m) + 1e-12));
      while (ch >= 1 && static_cast<double>(ch) / static_cast<double>(m) > wh) --ch;
      if (ch < cl || ch < 1) {
        feasible = false;
        break;
      }
      lo[static_cast<std::size_t>(j)] = cl;
      hi[static_cast<std::size_t>(j)] = ch;
      lo_sum += cl;
      hi_sum += ch;
    }
    if (!feasible || lo_sum > m || hi_sum < m) continue;
    std::vector<long> counts = lo;
    long remaining = m - lo_sum;
    for (int j = 0; j < k && remaining > 0; ++j) {
      const long room = hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)];
      const long add = std::min(room, remaining);
      counts[static_cast<std::size_t>(j)] += add;
      remaining -= add;
    }
    return RationalCounts{m, std::move(counts)};
  }
  throw BudgetExceeded("rationalize_measure: no feasible m up to " + std::to_string(m_budget),
                       static_cast<double>(m_budget));
}

DiscreteMeasure uniformize_measure(const FiniteKernelSpace& space, const DiscreteMeasure& mu,
                                   double eps, long m_budget) {
  if (!(eps > 0.0)) throw InputError("uniformize_measure: eps must be positive");
  if (mu.is_equal_weight()) return mu;
  const double kmax = space.max_kernel_value();
  if (kmax == 0.0) return mu;  // all potentials are identically zero

  // Componentwise tolerance eta for the rational step: |U^nu - U^mu| <= eta * U^mu
  // <= eta * kmax, so eta = eps / (2 kmax) leaves a factor-2 margin.
  const double eta = eps / (2.0 * kmax);
  const RationalCounts rc = rationalize_measure(mu, eta, m_budget);
  Eigen::VectorXd wts(mu.support_size());
  for (int j = 0; j < mu.support_size(); ++j)
    wts[j] = static_cast<double>(rc.counts[static_cast<std::size_t>(j)]) /
             static_cast<double>(rc.m);
  DiscreteMeasure nu = DiscreteMeasure::normalized(mu.atoms(), std::move(wts));

  const auto all = iota_indices(space.size());
  const Eigen::VectorXd err =
      (potential_values(space, mu, all) - potential_values(space, nu, all)).cwiseAbs();
  if (err.maxCoeff() > eps)
    throw InternalConsistencyError(
        "uniformize_measure: rationalized measure missed the sup-norm bound (tolerance "
        "derivation bug)");
  return nu;
}

}  // namespace rvz
