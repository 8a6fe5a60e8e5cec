#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rvz/energy.hpp"
#include "rvz/geometry.hpp"
#include "rvz/norms.hpp"
#include "rvz/rng.hpp"

namespace rvz {

enum class SampleScheme { Basis, Grid, Random };

/// Point sample of the unit sphere of a norm (or of the 0<p<1 metric): every
/// point satisfies | ||x|| - 1 | <= 1e-12 under the sample's norm functional.
struct SphereSample {
  NormSpec norm;
  int dim = 0;
  SampleScheme scheme = SampleScheme::Random;
  std::vector<Eigen::VectorXd> points;
};

/// The standard basis vectors e_1..e_n of R^dim: unit vectors with pairwise
/// disjoint supports, so their pairwise kernel distances are 2^(1/p) for the
/// lp family and exactly 2 for the 0<p<1 metric.
SphereSample witness_configuration(const NormSpec& norm, int n, int dim);

/// Normal samples normalized to the sphere; fixed seed for reproducibility.
SphereSample sphere_sample_random(const NormSpec& norm, int dim, int count,
                                  std::uint64_t seed = kDefaultSeed);

/// Deterministic sphere grids in 2-D (parametric circle / square-boundary
/// walk) and 3-D (normalized cube-surface lattice). `count` is exact in 2-D
/// and approximate in 3-D.
SphereSample sphere_sample_grid(const NormSpec& norm, int dim, int count);

/// Per-point lower bound for the n-point Chebyshev constant of the lp sphere:
/// 2^(1/p) (1 - n^(-1/p)) for p >= 1, and 2^(1/p) ((n-1)/n)^(1/p) for p < 1.
double lp_lower_bound(double p, int n);

/// Per-point upper bound for the dual constant, parametrized by eta > 0
/// (default n^(-1/(2p))): (1/n) eta^-p (1+2^p)^(1/p) + 2^(1/p)(1+eta) for
/// p >= 1, and (1/n) 3^(1/p) eta^-p + 2^(1/p)(1+eta^p)^(1/p) for p < 1.
double lp_upper_bound(double p, int n, std::optional<double> eta = std::nullopt);

double default_eta(double p, int n);

/// Per-point bound 2(n-1)/n for the 0<p<1 metric case.
double lp_metric_lower_bound(int n);

struct LpBoundRow {
  int n = 0;
  int dim = 0;
  double lower = 0.0;
  double upper = 0.0;
  double eta = 0.0;
  double measured_q = 0.0;        // max sample potential of the witness measure
  double measured_min_u = 0.0;    // min sample potential (upper-bounds the maximin value only)
  bool within_upper = false;      // measured_q <= upper + 1e-9
};

struct LpExperimentResult {
  double p = 0.0;
  int sample_count = 0;
  std::uint64_t seed = 0;
  std::vector<LpBoundRow> rows;
};

/// For each n: builds the disjoint-support witness in dimension max(n, min_dim),
/// measures its potential over a random sphere sample, and tabulates the
/// closed-form envelope against the measurements.
LpExperimentResult lp_experiment(double p, const std::vector<int>& n_list, int min_dim = 2,
                                 int sample_count = 2000, std::uint64_t seed = kDefaultSeed);

struct ConvergenceRow {
  int dim = 0;
  long sample_size = 0;
  double value_lo = 0.0;
  double value_hi = 0.0;
  double value = 0.0;
  double mesh = 0.0;  // max distance from a sphere sample point to its nearest neighbour
  bool converged = false;
};

struct ConvergenceResult {
  NormSpec norm;
  std::vector<ConvergenceRow> rows;
  bool truncated = false;
};

/// Certified rendezvous values of discretized spheres across dimensions
/// (grids for d <= 3, seeded random samples beyond). Nested lp subspaces are
/// exact isometric embeddings, so no norm-distortion correction applies.
ConvergenceResult subspace_convergence(const NormSpec& norm, const std::vector<int>& dims,
                                       long per_dim_budget = 1000,
                                       std::uint64_t seed = kDefaultSeed,
                                       const GameOptions& game = {});

struct NamedConstant {
  std::string key;
  std::string description;
  std::string provenance;  // "closed form" vs "cited value"
  bool is_interval = false;
  double value_lo = 0.0;
  double value_hi = 0.0;
  std::string formula;  // set for parametric rows
};

/// The fixed constants table: lp spheres 2^(1/p), Hilbert sqrt(2), the 0<p<1
/// metric value 2, the real/complex sup-norm sequence constants, the c_0
/// interval and the C(K) dual constant.
std::vector<NamedConstant> named_constants();

/// 2^(1/p), the rendezvous constant of the infinite-dimensional lp sphere.
double lp_sphere_constant(double p);

struct EntropyGrowthRow {
  int dim = 0;
  long sample_size = 0;
  long covering_number = 0;
  bool exact = false;
  bool infinite = false;
  long implied_n = 0;        // largest n with a guaranteed bound (N - 1)
  double implied_bound = 0;  // m_bar_n >= t for all n < N
};

struct EntropyGrowthResult {
  double t = 0.0;
  std::vector<EntropyGrowthRow> rows;
};

/// Covering numbers of the sign-vector sample {-1,+1}^d of the sup-norm sphere
/// at radius t, and the entropy lower bounds they imply. Demonstrates N
/// growing without bound for t < 2 at finite scale.
EntropyGrowthResult entropy_growth_experiment(const std::vector<int>& dims, double t,
                                              int max_dim = 12);

/// All sign vectors of {-1,+1}^d.
std::vector<Eigen::VectorXd> sign_vectors(int d);

}  // namespace rvz
