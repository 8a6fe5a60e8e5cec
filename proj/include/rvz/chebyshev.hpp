#pragma once

#include <string>
#include <vector>

#include "rvz/energy.hpp"
#include "rvz/space.hpp"

namespace rvz {

/// Exact n-th Chebyshev constants of L with respect to H:
///   m_n     = max over size-n multisets W of H of  min_{x in L} (1/n) sum_{w in W} k(x,w)
///   m_bar_n = min over size-n multisets W of H of  max_{x in L} (same average)
/// Witness configurations are reported as space-level indices, nondecreasing
/// in H-position order; value ties keep the lexicographically smallest
/// configuration, so results do not depend on thread count.
struct ChebnResult {
  int n = 0;
  double m_n = 0.0;
  double m_bar_n = 0.0;
  std::vector<int> argmax_config;
  std::vector<int> argmin_config;
};

struct ChebOptions {
  double enumeration_budget = 2e7;  // max admissible C(|H|+n-1, n)
  int threads = 1;                  // 0 = hardware concurrency
};

ChebnResult cheb_n(const FiniteKernelSpace& space, const std::vector<int>& H,
                   const std::vector<int>& L, int n, const ChebOptions& opts = {});
ChebnResult cheb_n(const FiniteKernelSpace& space, const std::string& H_name,
                   const std::string& L_name, int n, const ChebOptions& opts = {});

/// Number of size-n multisets from a ground set of size h, as a double
/// (values beyond any sane budget saturate to +inf).
double multiset_count(int h, int n);

/// R_n(H,L) = [m_n, m_bar_n]; empty iff m_n > m_bar_n (possible when H ⊄ L).
Interval rendezvous_set_n(const FiniteKernelSpace& space, const std::string& H_name,
                          const std::string& L_name, int n, const ChebOptions& opts = {});

/// Running enumeration envelopes: lower = max_{n<=n_max} m_n is a valid lower
/// bound for the limit constant M(H,L) (the sequence sup is the limit), and
/// upper = min_{n<=n_max} m_bar_n bounds the dual limit from above.
struct LimitBracket {
  double lower = 0.0;
  double upper = 0.0;
  int n_max = 0;
  bool exact = false;
};

LimitBracket limit_bracket(const FiniteKernelSpace& space, const std::string& H_name,
                           const std::string& L_name, int n_max, const ChebOptions& opts = {});

/// For H = L: the certified game value as a degenerate interval, after
/// checking it against the enumeration bracket (throws
/// InternalConsistencyError on disagreement beyond tol). For H != L: the
/// enumeration bracket, never claimed exact.
Interval rendezvous_interval(const FiniteKernelSpace& space, const std::string& H_name,
                             const std::string& L_name, int n_max, double tol = 1e-9,
                             const ChebOptions& cheb_opts = {},
                             const GameOptions& game_opts = {});

}  // namespace rvz
