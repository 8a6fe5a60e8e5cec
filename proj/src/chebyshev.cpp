#include "rvz/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rvz/errors.hpp"
#include "rvz/parallel.hpp"

namespace rvz {

namespace {

struct BlockBest {
  double best_min = -std::numeric_limits<double>::infinity();  // -> m_n
  double best_max = std::numeric_limits<double>::infinity();   // -> m_bar_n
  std::vector<int> argmax, argmin;                             // H positions
  bool any = false;
};

// Depth-first enumeration of nondecreasing position sequences with running
// column sums. Visits configurations in lexicographic order; strict-improvement
// updates therefore keep the lexicographically smallest witness per value.
class Enumerator {
 public:
  Enumerator(const Eigen::MatrixXd& K_LH, int n)
      : K_(K_LH), n_(n), sums_(K_LH.rows(), n + 1), path_(static_cast<std::size_t>(n), 0) {
    sums_.col(0).setZero();
  }

  void run(int first_begin, int first_end, BlockBest& out) {
    out_ = &out;
    for (int pos = first_begin; pos < first_end; ++pos) descend(1, pos);
  }

 private:
  void descend(int depth, int pos) {
    sums_.col(depth) = sums_.col(depth - 1) + K_.col(pos);
    path_[static_cast<std::size_t>(depth - 1)] = pos;
    if (depth == n_) {
      leaf();
      return;
    }
    const int h = static_cast<int>(K_.cols());
    for (int next = pos; next < h; ++next) descend(depth + 1, next);
  }

  void leaf() {
    const double inv_n = 1.0 / static_cast<double>(n_);
    const double lo = sums_.col(n_).minCoeff() * inv_n;
    const double hi = sums_.col(n_).maxCoeff() * inv_n;
    auto& b = *out_;
    if (lo > b.best_min) {
      b.best_min = lo;
      b.argmax = path_;
    }
    if (hi < b.best_max) {
      b.best_max = hi;
      b.argmin = path_;
    }
    b.any = true;
  }

  const Eigen::MatrixXd& K_;
  int n_;
  Eigen::MatrixXd sums_;
  std::vector<int> path_;
  BlockBest* out_ = nullptr;
};

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

double multiset_count(int h, int n) {
  double count = 1.0;
  for (int i = 1; i <= n; ++i) {
    count *= static_cast<double>(h - 1 + i) / static_cast<double>(i);
    if (!std::isfinite(count)) return std::numeric_limits<double>::infinity();
  }
  return count;
}

ChebnResult cheb_n(const FiniteKernelSpace& space, const std::vector<int>& H,
                   const std::vector<int>& L, int n, const ChebOptions& opts) {
  if (H.empty() || L.empty()) throw InputError("cheb_n: empty subset");
  if (n < 1) throw InputError("cheb_n: n must be >= 1");
  const double count = multiset_count(static_cast<int>(H.size()), n);
  if (count > opts.enumeration_budget)
    throw BudgetExceeded("cheb_n: enumeration needs budget " + std::to_string(count) +
                             " multisets, budget is " + std::to_string(opts.enumeration_budget),
                         count);

  Eigen::MatrixXd K_LH(L.size(), H.size());
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = 0; j < H.size(); ++j)
      K_LH(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          space.kernel()(L[i], H[j]);

  const int h = static_cast<int>(H.size());
  const int nblocks = std::min(resolve_threads(opts.threads), h);
  std::vector<BlockBest> partial(static_cast<std::size_t>(std::max(nblocks, 1)));
  for_blocks(static_cast<std::size_t>(h), nblocks, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    Enumerator e(K_LH, n);
    e.run(static_cast<int>(lo), static_cast<int>(hi), partial[b]);
  });

  // Merge in block order: blocks hold disjoint lexicographic ranges, so
  // strict-improvement with first-wins reproduces the sequential result.
  BlockBest best;
  for (const auto& p : partial) {
    if (!p.any) continue;
    if (p.best_min > best.best_min ||
        (p.best_min == best.best_min && (!best.any || lex_less(p.argmax, best.argmax)))) {
      best.best_min = p.best_min;
      best.argmax = p.argmax;
    }
    if (p.best_max < best.best_max ||
        (p.best_max == best.best_max && (!best.any || lex_less(p.argmin, best.argmin)))) {
      best.best_max = p.best_max;
      best.argmin = p.argmin;
    }
    best.any = true;
  }

  ChebnResult out;
  out.n = n;
  out.m_n = best.best_min;
  out.m_bar_n = best.best_max;
  out.argmax_config.reserve(static_cast<std::size_t>(n));
  out.argmin_config.reserve(static_cast<std::size_t>(n));
  for (int pos : best.argmax) out.argmax_config.push_back(H[static_cast<std::size_t>(pos)]);
  for (int pos : best.argmin) out.argmin_config.push_back(H[static_cast<std::size_t>(pos)]);
  return out;
}

ChebnResult cheb_n(const FiniteKernelSpace& space, const std::string& H_name,
                   const std::string& L_name, int n, const ChebOptions& opts) {
  return cheb_n(space, space.subset(H_name), space.subset(L_name), n, opts);
}

Interval rendezvous_set_n(const FiniteKernelSpace& space, const std::string& H_name,
                          const std::string& L_name, int n, const ChebOptions& opts) {
  const ChebnResult r = cheb_n(space, H_name, L_name, n, opts);
  return Interval(r.m_n, r.m_bar_n);
}

LimitBracket limit_bracket(const FiniteKernelSpace& space, const std::string& H_name,
                           const std::string& L_name, int n_max, const ChebOptions& opts) {
  if (n_max < 1) throw InputError("limit_bracket: n_max must be >= 1");
  LimitBracket out;
  out.n_max = n_max;
  out.lower = -std::numeric_limits<double>::infinity();
  out.upper = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    const ChebnResult r = cheb_n(space, H_name, L_name, n, opts);
    out.lower = std::max(out.lower, r.m_n);
    out.upper = std::min(out.upper, r.m_bar_n);
  }
  out.exact = false;
  return out;
}

Interval rendezvous_interval(const FiniteKernelSpace& space, const std::string& H_name,
                             const std::string& L_name, int n_max, double tol,
                             const ChebOptions& cheb_opts, const GameOptions& game_opts) {
  const LimitBracket bracket = limit_bracket(space, H_name, L_name, n_max, cheb_opts);
  const auto& H = space.subset(H_name);
  const auto& L = space.subset(L_name);
  if (!same_index_set(H, L)) return Interval(bracket.lower, bracket.upper);

  const GameSolution g = game_value(space, H, L, game_opts);
  if (bracket.lower > g.value_hi + tol || g.value_lo > bracket.upper + tol)
    throw InternalConsistencyError(
        "rendezvous_interval: enumeration bracket and game value disagree beyond tol");
  return Interval::point(g.value());
}

}  // namespace rvz
