#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "rvz/energy.hpp"
#include "rvz/norms.hpp"
#include "rvz/space.hpp"

namespace rvz {

struct BallSpec {
  Eigen::VectorXd center;
  double radius = 0.0;
  NormSpec norm;
};

struct CenterOptions {
  int starts = 8;          // deterministic multi-start count
  int phases = 26;         // geometric step-shrink phases per start
  int iters_per_phase = 120;
  std::uint64_t seed = 0x5EBB11;  // start perturbations
};

/// Smallest enclosing ball with centre constrained to conv(vertices):
/// minimizes max_i ||c - v_i|| by projected subgradient in barycentric
/// coordinates. `lower_bound` = half the max pairwise distance brackets the
/// optimum from below for any norm; the returned radius is always a valid
/// upper bound (f is convex).
struct CenterResult {
  BallSpec ball;
  double lower_bound = 0.0;
  bool converged = false;
  long evaluations = 0;
};

CenterResult chebyshev_center(const std::vector<Eigen::VectorXd>& vertices, const NormSpec& norm,
                              double tol = 1e-6, const CenterOptions& opts = {});

enum class CoverMode { Exact, Greedy };

/// Covering of L by open balls B(y, t) = {x : k(x,y) < t} centred in H.
struct CoveringResult {
  double t = 0.0;
  bool infinite = false;  // some point of L is in no candidate ball
  long n = 0;             // number of balls used (meaningless when infinite)
  std::vector<int> centers;
  bool minimal = false;          // exact optimum proven
  bool budget_exceeded = false;  // exact search fell back to greedy
};

struct CoverOptions {
  long node_budget = 1'000'000;  // branch-and-bound nodes before greedy fallback
};

CoveringResult covering_number(const FiniteKernelSpace& space, const std::vector<int>& H,
                               const std::vector<int>& L, double t, CoverMode mode,
                               const CoverOptions& opts = {});
CoveringResult covering_number(const FiniteKernelSpace& space, const std::string& H_name,
                               const std::string& L_name, double t, CoverMode mode,
                               const CoverOptions& opts = {});

/// Largest kernel-value breakpoint t with N(t,H,L) > n (so the dual Chebyshev
/// constant m_bar_n is at least t); 0 when no breakpoint qualifies. Only
/// exactly-proven covering numbers are used, so the returned bound is always
/// valid even under branch-and-bound budgets.
double entropy_lower_bound(const FiniteKernelSpace& space, const std::vector<int>& H,
                           const std::vector<int>& L, int n, const CoverOptions& opts = {});
double entropy_lower_bound(const FiniteKernelSpace& space, const std::string& H_name,
                           const std::string& L_name, int n, const CoverOptions& opts = {});

/// Chebyshev radius vs rendezvous value of conv(vertices), the radius from the
/// centre solver and the value from the kernel game on a filled grid
/// discretization. Their agreement (up to O(resolution)) is the Szekeres
/// identity at desk scale.
struct SzekeresReport {
  CenterResult center;
  double rho = 0.0;        // Chebyshev out-radius
  double r_lo = 0.0;       // certified game bracket on the grid
  double r_hi = 0.0;
  double r = 0.0;          // bracket midpoint
  double discrepancy = 0.0;
  double resolution = 0.0;
  long grid_points = 0;
  bool game_converged = false;
};

struct SzekeresOptions {
  double game_tol = 1e-5;
  long max_grid_points = 60'000;
  CenterOptions center;
  GameOptions game;
};

SzekeresReport szekeres_check(const std::vector<Eigen::VectorXd>& vertices, const NormSpec& norm,
                              double grid_resolution, double tol = 1e-6,
                              const SzekeresOptions& opts = {});

/// Counterclockwise convex hull of 2-D points (monotone chain).
std::vector<Eigen::VectorXd> convex_hull_2d(const std::vector<Eigen::VectorXd>& pts);

/// Inclusive membership test against a counterclockwise convex polygon.
bool point_in_convex_polygon(const Eigen::Vector2d& p, const std::vector<Eigen::VectorXd>& hull,
                             double slack = 1e-9);

/// Grid discretization of conv(vertices) at the given lattice step (2-D and
/// 3-D); includes the vertices themselves.
std::vector<Eigen::VectorXd> fill_convex_hull_grid(const std::vector<Eigen::VectorXd>& vertices,
                                                   double resolution, long max_points);

}  // namespace rvz
