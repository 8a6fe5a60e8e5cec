#include "rvz/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "rvz/errors.hpp"

namespace rvz {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_norm_kind_for_sphere(const NormSpec& norm) {
  if (norm.is_explicit())
    throw InputError("sphere sampling needs a coordinate norm, not an explicit kernel");
}

Eigen::VectorXd normalize_to_sphere(const NormSpec& norm, Eigen::VectorXd x) {
  const double nv = norm_value(norm, x);
  if (!(nv > 0.0)) throw InputError("cannot normalize the zero vector");
  if (norm.kind == NormKind::LpMetric)
    return x / std::pow(nv, 1.0 / norm.p);
  return x / nv;
}

}  // namespace

SphereSample witness_configuration(const NormSpec& norm, int n, int dim) {
  check_norm_kind_for_sphere(norm);
  if (n < 1) throw InputError("witness_configuration: n must be >= 1");
  if (dim < n)
    throw InputError("witness_configuration: dim must be >= n (disjoint supports need " +
                     std::to_string(n) + " coordinates)");
  SphereSample s{norm, dim, SampleScheme::Basis, {}};
  s.points.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e[j] = 1.0;
    s.points.push_back(std::move(e));
  }
  return s;
}

SphereSample sphere_sample_random(const NormSpec& norm, int dim, int count, std::uint64_t seed) {
  check_norm_kind_for_sphere(norm);
  if (dim < 1 || count < 1) throw InputError("sphere_sample_random: dim and count must be >= 1");
  SphereSample s{norm, dim, SampleScheme::Random, {}};
  s.points.reserve(static_cast<std::size_t>(count));
  Rng rng(seed);
  while (static_cast<int>(s.points.size()) < count) {
    Eigen::VectorXd x(dim);
    for (int k = 0; k < dim; ++k) x[k] = rng.normal();
    if (norm_value(norm, x) < 1e-12) continue;
    s.points.push_back(normalize_to_sphere(norm, std::move(x)));
  }
  return s;
}

namespace {

std::vector<Eigen::VectorXd> square_boundary_walk(int count) {
  // Index-parametrized walk of the boundary of [-1,1]^2; corners land exactly
  // on lattice indices when count is a multiple of 4.
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double u = 8.0 * static_cast<double>(i) / static_cast<double>(count);
    const int side = static_cast<int>(u / 2.0);
    const double local = u - 2.0 * side;
    Eigen::Vector2d p;
    switch (side) {
      case 0: p = {-1.0 + local, -1.0}; break;
      case 1: p = {1.0, -1.0 + local}; break;
      case 2: p = {1.0 - local, 1.0}; break;
      default: p = {-1.0, 1.0 - local}; break;
    }
    pts.emplace_back(p);
  }
  return pts;
}

std::vector<Eigen::VectorXd> cube_surface_lattice(int per_edge) {
  std::set<std::array<double, 3>> seen;
  std::vector<Eigen::VectorXd> pts;
  const auto coord = [per_edge](int i) {
    return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(per_edge - 1);
  };
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {-1.0, 1.0}) {
      for (int a = 0; a < per_edge; ++a) {
        for (int b = 0; b < per_edge; ++b) {
          std::array<double, 3> c{};
          c[static_cast<std::size_t>(axis)] = sign;
          c[static_cast<std::size_t>((axis + 1) % 3)] = coord(a);
          c[static_cast<std::size_t>((axis + 2) % 3)] = coord(b);
          if (seen.insert(c).second) pts.push_back(Eigen::Vector3d(c[0], c[1], c[2]));
        }
      }
    }
  }
  return pts;
}

}  // namespace

SphereSample sphere_sample_grid(const NormSpec& norm, int dim, int count) {
  check_norm_kind_for_sphere(norm);
  if (count < 2) throw InputError("sphere_sample_grid: count must be >= 2");
  SphereSample s{norm, dim, SampleScheme::Grid, {}};
  if (dim == 2) {
    if (norm.kind == NormKind::SupNorm) {
      s.points = square_boundary_walk(count);
    } else {
      s.points.reserve(static_cast<std::size_t>(count));
      for (int i = 0; i < count; ++i) {
        const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(count);
        Eigen::Vector2d x(std::cos(theta), std::sin(theta));
        s.points.push_back(normalize_to_sphere(norm, x));
      }
    }
  } else if (dim == 3) {
    const int per_edge = std::max(2, static_cast<int>(std::lround(std::sqrt(count / 6.0))) + 1);
    for (auto& p : cube_surface_lattice(per_edge))
      s.points.push_back(norm.kind == NormKind::SupNorm ? p : normalize_to_sphere(norm, p));
  } else {
    throw InputError("sphere_sample_grid: grids are available for dim 2 and 3 only");
  }
  return s;
}

double default_eta(double p, int n) { return std::pow(static_cast<double>(n), -1.0 / (2.0 * p)); }

double lp_lower_bound(double p, int n) {
  if (!(p > 0.0) || n < 1) throw InputError("lp_lower_bound: need p > 0, n >= 1");
  const double c = std::pow(2.0, 1.0 / p);
  if (p >= 1.0) {
    // exponent 1/q - 1 collapses to -1/p for every p >= 1 (q = infinity at p = 1)
    return c * (1.0 - std::pow(static_cast<double>(n), -1.0 / p));
  }
  return c * std::pow(static_cast<double>(n - 1) / static_cast<double>(n), 1.0 / p);
}

double lp_upper_bound(double p, int n, std::optional<double> eta_opt) {
  if (!(p > 0.0) || n < 1) throw InputError("lp_upper_bound: need p > 0, n >= 1");
  const double eta = eta_opt.value_or(default_eta(p, n));
  if (!(eta > 0.0)) throw InputError("lp_upper_bound: eta must be positive");
  const double c = std::pow(2.0, 1.0 / p);
  const double inv_n = 1.0 / static_cast<double>(n);
  if (p >= 1.0)
    return inv_n * std::pow(eta, -p) * std::pow(1.0 + std::pow(2.0, p), 1.0 / p) +
           c * (1.0 + eta);
  return inv_n * std::pow(3.0, 1.0 / p) * std::pow(eta, -p) +
         c * std::pow(1.0 + std::pow(eta, p), 1.0 / p);
}

double lp_metric_lower_bound(int n) {
  if (n < 1) throw InputError("lp_metric_lower_bound: n must be >= 1");
  return 2.0 * static_cast<double>(n - 1) / static_cast<double>(n);
}

LpExperimentResult lp_experiment(double p, const std::vector<int>& n_list, int min_dim,
                                 int sample_count, std::uint64_t seed) {
  if (!(p > 0.0)) throw InputError("lp_experiment: p must be positive");
  LpExperimentResult out;
  out.p = p;
  out.sample_count = sample_count;
  out.seed = seed;
  const NormSpec norm = NormSpec::lp(p);
  for (int n : n_list) {
    if (n < 1) throw InputError("lp_experiment: n values must be >= 1");
    const int dim = std::max(n, min_dim);
    const SphereSample witness = witness_configuration(norm, n, dim);
    const SphereSample sample = sphere_sample_random(norm, dim, sample_count, seed);
    LpBoundRow row;
    row.n = n;
    row.dim = dim;
    row.lower = lp_lower_bound(p, n);
    row.upper = lp_upper_bound(p, n);
    row.eta = default_eta(p, n);
    double q_max = -std::numeric_limits<double>::infinity();
    double q_min = std::numeric_limits<double>::infinity();
    for (const auto& x : sample.points) {
      double acc = 0.0;
      for (const auto& w : witness.points) acc += eval_kernel(norm, x, w);
      const double u = acc / static_cast<double>(n);
      q_max = std::max(q_max, u);
      q_min = std::min(q_min, u);
    }
    row.measured_q = q_max;
    row.measured_min_u = q_min;
    row.within_upper = q_max <= row.upper + 1e-9;
    out.rows.push_back(row);
  }
  return out;
}

ConvergenceResult subspace_convergence(const NormSpec& norm, const std::vector<int>& dims,
                                       long per_dim_budget, std::uint64_t seed,
                                       const GameOptions& game) {
  check_norm_kind_for_sphere(norm);
  ConvergenceResult out;
  out.norm = norm;
  for (int d : dims) {
    if (d < 2) throw InputError("subspace_convergence: dims must be >= 2");
    SphereSample sample;
    try {
      if (d <= 3) {
        sample = sphere_sample_grid(norm, d, static_cast<int>(per_dim_budget));
      } else {
        sample = sphere_sample_random(norm, d, static_cast<int>(per_dim_budget), seed);
      }
    } catch (const BudgetExceeded&) {
      out.truncated = true;
      break;
    }
    const FiniteKernelSpace space = build_space(sample.points, norm);
    const GameSolution g = game_value(space, space.subset("H"), space.subset("L"), game);
    ConvergenceRow row;
    row.dim = d;
    row.sample_size = static_cast<long>(sample.points.size());
    row.value_lo = g.value_lo;
    row.value_hi = g.value_hi;
    row.value = g.value();
    row.converged = g.converged;
    double mesh = 0.0;
    const auto& K = space.kernel();
    for (int i = 0; i < space.size(); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (int j = 0; j < space.size(); ++j)
        if (j != i) nearest = std::min(nearest, K(i, j));
      mesh = std::max(mesh, nearest);
    }
    row.mesh = mesh;
    out.rows.push_back(row);
  }
  return out;
}

double lp_sphere_constant(double p) {
  if (!(p > 0.0)) throw InputError("lp_sphere_constant: p must be positive");
  return std::pow(2.0, 1.0 / p);
}

std::vector<NamedConstant> named_constants() {
  const double sqrt2 = std::sqrt(2.0);
  const double sigma_real = 1.5;
  const double sigma_complex = 1.0 / 3.0 + 2.0 * std::sqrt(3.0) / 3.14159265358979323846;
  std::vector<NamedConstant> table;
  table.push_back({"lp", "rendezvous constant of the infinite-dimensional lp sphere", "closed form",
                   false, 0.0, 0.0, "2^(1/p)"});
  table.push_back({"hilbert", "rendezvous number of the infinite-dimensional Hilbert sphere",
                   "closed form", false, sqrt2, sqrt2, "sqrt(2)"});
  table.push_back({"lp_metric_sub1", "rendezvous value of the 0<p<1 integral-metric sphere",
                   "closed form", false, 2.0, 2.0, "2"});
  table.push_back({"sigma_real", "real sup-norm sequence-space constant", "cited value", false,
                   sigma_real, sigma_real, "3/2"});
  table.push_back({"sigma_complex", "complex sup-norm sequence-space constant", "cited value",
                   false, sigma_complex, sigma_complex, "1/3 + 2*sqrt(3)/pi"});
  table.push_back({"c0_real", "rendezvous interval of real null sequences", "cited value", true,
                   1.0, sigma_real, "[1, 3/2]"});
  table.push_back({"c0_complex", "rendezvous interval of complex null sequences", "cited value",
                   true, 1.0, sigma_complex, "[1, 1/3 + 2*sqrt(3)/pi]"});
  table.push_back({"ck_dual_chebyshev",
                   "dual Chebyshev constant of the continuous-function sphere (perfect compact "
                   "base without isolated points)",
                   "cited value", false, 2.0, 2.0, "2"});
  return table;
}

std::vector<Eigen::VectorXd> sign_vectors(int d) {
  if (d < 1 || d > 24) throw InputError("sign_vectors: d out of range [1, 24]");
  std::vector<Eigen::VectorXd> out;
  out.reserve(1ULL << d);
  for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
    Eigen::VectorXd v(d);
    for (int k = 0; k < d; ++k) v[k] = (mask >> k) & 1ULL ? 1.0 : -1.0;
    out.push_back(std::move(v));
  }
  return out;
}

EntropyGrowthResult entropy_growth_experiment(const std::vector<int>& dims, double t,
                                              int max_dim) {
  // The unbounded-growth phenomenon concerns t < 2 (distinct sign vectors sit
  // at sup-distance 2); larger radii are still legal queries and give small N.
  if (!(t > 0.0)) throw InputError("entropy_growth_experiment: t must be positive");
  EntropyGrowthResult out;
  out.t = t;
  for (int d : dims) {
    if (d > max_dim)
      throw BudgetExceeded("entropy_growth_experiment: dim " + std::to_string(d) +
                               " exceeds budget " + std::to_string(max_dim),
                           static_cast<double>(d));
    const auto pts = sign_vectors(d);
    const FiniteKernelSpace space = build_space(pts, NormSpec::sup());
    const CoveringResult cover =
        covering_number(space, space.subset("H"), space.subset("L"), t, CoverMode::Exact);
    EntropyGrowthRow row;
    row.dim = d;
    row.sample_size = static_cast<long>(pts.size());
    row.covering_number = cover.n;
    row.exact = cover.minimal;
    row.infinite = cover.infinite;
    row.implied_n = cover.infinite ? std::numeric_limits<long>::max() : cover.n - 1;
    row.implied_bound = t;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace rvz
