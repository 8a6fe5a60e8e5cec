#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "rvz/simplex.hpp"
#include "rvz/space.hpp"

namespace rvz {

/// Potential U^mu evaluated on a subset: values[i] = sum_j w_j k(eval[i], atom_j).
struct PotentialProfile {
  DiscreteMeasure measure;
  std::vector<int> eval_indices;
  Eigen::VectorXd values;
};

PotentialProfile potential(const FiniteKernelSpace& space, const DiscreteMeasure& mu,
                           const std::vector<int>& eval_indices);
PotentialProfile potential(const FiniteKernelSpace& space, const DiscreteMeasure& mu,
                           const std::string& subset_name);

/// [min, max] of U^mu over the evaluation subset (the average set of one measure).
Interval average_set_of_measure(const FiniteKernelSpace& space, const DiscreteMeasure& mu,
                                const std::string& subset_name);

struct GameOptions {
  double tol = 1e-9;               // required certified gap on diagonal instances
  long dense_cell_budget = 8'000'000;  // direct-LP tableau-cell budget (per orientation)
  int refine_seed = 64;            // working-set seed size for large instances
  int refine_add = 16;             // points added per refinement round
  int refine_rounds = 120;
  int refine_support_cap = 1600;   // working-set size cap
  lp::Options lp;
};

/// Certified value bracket of the kernel game between a measure player on H
/// and a point player on L, with recomputed witnesses:
///   value_lo = min over L of U^{mu_star}  (certifies the maximin value from below)
///   value_hi = max over L of U^{nu_star}  (certifies the minimax value from above)
/// For H = L the two values coincide and gap <= tol is expected.
struct GameSolution {
  double value_lo = 0.0;
  double value_hi = 0.0;
  DiscreteMeasure mu_star;
  DiscreteMeasure nu_star;
  double gap = 0.0;            // value_hi - value_lo
  bool diagonal = false;       // H and L are the same index set
  bool converged = false;      // solved to tolerance; otherwise best certified bracket
  bool used_refinement = false;
  long lp_iterations = 0;

  double value() const { return 0.5 * (value_lo + value_hi); }
};

GameSolution game_value(const FiniteKernelSpace& space, const std::vector<int>& H,
                        const std::vector<int>& L, const GameOptions& opts = {});
GameSolution game_value(const FiniteKernelSpace& space, const std::string& H_name,
                        const std::string& L_name, const GameOptions& opts = {});

/// Interval [q_lower(H,L), q(H,L)] from the game bracket; empty when the
/// endpoints cross (possible only when H is not contained in L).
Interval average_interval(const FiniteKernelSpace& space, const std::string& H_name,
                          const std::string& L_name, const GameOptions& opts = {});

/// A measure on S whose potential is constant on S within tol, found by
/// minimizing the potential oscillation max-min over the probability simplex.
/// Absence (oscillation above tol) is a valid result, not an error.
std::optional<DiscreteMeasure> invariant_measure(const FiniteKernelSpace& space,
                                                 const std::vector<int>& S, double tol = 1e-9);
std::optional<DiscreteMeasure> invariant_measure(const FiniteKernelSpace& space,
                                                 const std::string& subset_name,
                                                 double tol = 1e-9);

struct QuasiInvariantResult {
  DiscreteMeasure measure;
  double gap = 0.0;        // achieved Q - Q_lower on S
  bool within_eps = false;
};

/// Measure with potential oscillation on S at most eps when attainable;
/// otherwise the oscillation-minimizing measure with its achieved gap and a
/// failure flag.
QuasiInvariantResult quasi_invariant_search(const FiniteKernelSpace& space,
                                            const std::vector<int>& S, double eps);
QuasiInvariantResult quasi_invariant_search(const FiniteKernelSpace& space,
                                            const std::string& subset_name, double eps);

struct RationalCounts {
  long m = 0;
  std::vector<long> counts;  // one per atom of the input measure, each >= 1
};

/// Smallest m (incremental search up to m_budget) admitting integer counts
/// c_j >= 1 with sum m and (1-eps) sigma_j <= c_j/m <= (1+eps) sigma_j for
/// every atom. Throws BudgetExceeded when no feasible m exists in budget.
RationalCounts rationalize_measure(const DiscreteMeasure& sigma, double eps,
                                   long m_budget = 1'000'000);

/// Equal-weight approximation nu = (1/m) sum of Dirac masses (atoms carry
/// multiplicity c_j) with sup_x |U^mu(x) - U^nu(x)| <= eps over the whole
/// space, verified by recomputation before returning.
DiscreteMeasure uniformize_measure(const FiniteKernelSpace& space, const DiscreteMeasure& mu,
                                   double eps, long m_budget = 1'000'000);

/// U^mu over an arbitrary index list, as a bare vector (shared workhorse).
Eigen::VectorXd potential_values(const FiniteKernelSpace& space, const DiscreteMeasure& mu,
                                 const std::vector<int>& eval_indices);

}  // namespace rvz
