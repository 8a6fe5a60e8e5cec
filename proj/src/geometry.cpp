#include "rvz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rvz/errors.hpp"
#include "rvz/rng.hpp"
#include "rvz/simplex.hpp"

namespace rvz {

namespace {

// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(Eigen::VectorXd v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, tau = 0.0;
  int rho = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    cum += u[static_cast<std::size_t>(i)];
    const double cand = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[static_cast<std::size_t>(i)] - cand > 0.0) {
      rho = static_cast<int>(i + 1);
      tau = cand;
    }
  }
  (void)rho;
  for (Eigen::Index i = 0; i < n; ++i) v[i] = std::max(0.0, v[i] - tau);
  const double s = v.sum();
  if (s > 0.0) v /= s;  // guard accumulated rounding
  return v;
}

// A subgradient of z -> ||z|| for the supported norm variants; zero vector at z = 0.
Eigen::VectorXd norm_subgradient(const NormSpec& norm, const Eigen::VectorXd& z) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(z.size());
  if (norm.kind == NormKind::SupNorm) {
    Eigen::Index k = 0;
    const double m = z.cwiseAbs().maxCoeff(&k);
    if (m > 0.0) g[k] = z[k] > 0.0 ? 1.0 : -1.0;
    return g;
  }
  const double p = norm.p;
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < z.size(); ++i)
      g[i] = z[i] > 0.0 ? 1.0 : (z[i] < 0.0 ? -1.0 : 0.0);
    return g;
  }
  const double nz = eval_kernel(norm, z, Eigen::VectorXd::Zero(z.size()));
  if (nz == 0.0) return g;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double a = std::abs(z[i]) / nz;
    g[i] = (z[i] >= 0.0 ? 1.0 : -1.0) * std::pow(a, p - 1.0);
  }
  return g;
}

struct Bitset {
  std::vector<std::uint64_t> w;
  int bits = 0;

  explicit Bitset(int n = 0) : w(static_cast<std::size_t>((n + 63) / 64), 0), bits(n) {}
  void set(int i) { w[static_cast<std::size_t>(i >> 6)] |= 1ULL << (i & 63); }
  bool test(int i) const { return (w[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1ULL; }
  int count() const {
    int c = 0;
    for (auto x : w) c += static_cast<int>(__builtin_popcountll(x));
    return c;
  }
  int count_and(const Bitset& o) const {
    int c = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      c += static_cast<int>(__builtin_popcountll(w[i] & o.w[i]));
    return c;
  }
  void and_not(const Bitset& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
  }
  bool none() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  int first_set() const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i]) return static_cast<int>(i * 64) + __builtin_ctzll(w[i]);
    return -1;
  }
};

struct CoverInstance {
  std::vector<Bitset> sets;  // one per H candidate, over L positions
  int n_elems = 0;
};

CoverInstance build_cover_instance(const FiniteKernelSpace& space, const std::vector<int>& H,
                                   const std::vector<int>& L, double t) {
  CoverInstance inst;
  inst.n_elems = static_cast<int>(L.size());
  inst.sets.reserve(H.size());
  for (int y : H) {
    Bitset b(inst.n_elems);
    for (int i = 0; i < inst.n_elems; ++i)
      if (space.kernel()(L[static_cast<std::size_t>(i)], y) < t) b.set(i);
    inst.sets.push_back(std::move(b));
  }
  return inst;
}

std::vector<int> greedy_cover(const CoverInstance& inst, Bitset uncovered) {
  std::vector<int> picked;
  while (!uncovered.none()) {
    int best = -1, best_cnt = 0;
    for (std::size_t j = 0; j < inst.sets.size(); ++j) {
      const int c = inst.sets[j].count_and(uncovered);
      if (c > best_cnt) {
        best_cnt = c;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) return {};  // unreachable when cover exists
    picked.push_back(best);
    if (best_cnt == 1) {
      // Every remaining element needs its own ball; finish without rescans.
      uncovered.and_not(inst.sets[static_cast<std::size_t>(best)]);
      for (int e = uncovered.first_set(); e >= 0; e = uncovered.first_set()) {
        for (std::size_t j = 0; j < inst.sets.size(); ++j) {
          if (inst.sets[j].test(e)) {
            picked.push_back(static_cast<int>(j));
            uncovered.and_not(inst.sets[j]);
            break;
          }
        }
      }
      break;
    }
    uncovered.and_not(inst.sets[static_cast<std::size_t>(best)]);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

struct CoverSearch {
  const CoverInstance& inst;
  long budget;
  long nodes = 0;
  bool exhausted = false;
  std::vector<int> best;
  int max_set_size = 1;

  explicit CoverSearch(const CoverInstance& i, long b) : inst(i), budget(b) {
    for (const auto& s : inst.sets) max_set_size = std::max(max_set_size, s.count());
  }

  void dfs(const Bitset& uncovered, std::vector<int>& chosen) {
    if (uncovered.none()) {
      if (best.empty() || chosen.size() < best.size()) best = chosen;
      return;
    }
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    const int remaining = uncovered.count();
    const long lb = (remaining + max_set_size - 1) / max_set_size;
    if (!best.empty() &&
        static_cast<long>(chosen.size()) + lb >= static_cast<long>(best.size()))
      return;
    // Branch on the uncovered element with the fewest candidates.
    int elem = -1, fewest = std::numeric_limits<int>::max();
    for (int e = 0; e < inst.n_elems; ++e) {
      if (!uncovered.test(e)) continue;
      int c = 0;
      for (const auto& s : inst.sets)
        if (s.test(e)) ++c;
      if (c < fewest) {
        fewest = c;
        elem = e;
        if (c <= 1) break;
      }
    }
    if (elem < 0 || fewest == 0) return;  // uncoverable element: no solution below
    for (std::size_t j = 0; j < inst.sets.size() && !exhausted; ++j) {
      if (!inst.sets[j].test(elem)) continue;
      Bitset next = uncovered;
      next.and_not(inst.sets[j]);
      chosen.push_back(static_cast<int>(j));
      dfs(next, chosen);
      chosen.pop_back();
    }
  }
};

}  // namespace

CenterResult chebyshev_center(const std::vector<Eigen::VectorXd>& vertices, const NormSpec& norm,
                              double tol, const CenterOptions& opts) {
  if (vertices.empty()) throw InputError("chebyshev_center: no vertices");
  if (!(norm.kind == NormKind::LpNorm || norm.kind == NormKind::SupNorm))
    throw UnsupportedOperation("chebyshev_center: only lp (p >= 1) and sup norms are convex");
  if (!(tol > 0.0)) throw InputError("chebyshev_center: tol must be positive");
  const int m = static_cast<int>(vertices.size());
  const Eigen::Index d = vertices.front().size();
  for (const auto& v : vertices)
    if (v.size() != d) throw InputError("chebyshev_center: mixed dimensions");

  double lb = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      lb = std::max(lb, eval_kernel(norm, vertices[static_cast<std::size_t>(i)],
                                    vertices[static_cast<std::size_t>(j)]));
  lb *= 0.5;

  const auto f_of = [&](const Eigen::VectorXd& c, int& argmax) {
    double worst = -1.0;
    argmax = 0;
    for (int i = 0; i < m; ++i) {
      const double fi = eval_kernel(norm, c, vertices[static_cast<std::size_t>(i)]);
      if (fi > worst) {
        worst = fi;
        argmax = i;
      }
    }
    return worst;
  };
  const auto point_of = [&](const Eigen::VectorXd& lam) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
    for (int j = 0; j < m; ++j) c += lam[j] * vertices[static_cast<std::size_t>(j)];
    return c;
  };

  Rng rng(opts.seed);
  long evals = 0;
  double best_f = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_lam = Eigen::VectorXd::Constant(m, 1.0 / m);
  const double scale = std::max(2.0 * lb, 1e-9);

  const auto f_at_lam = [&](const Eigen::VectorXd& lam) {
    int worst = 0;
    ++evals;
    return f_of(point_of(lam), worst);
  };

  for (int s = 0; s < std::max(1, opts.starts); ++s) {
    Eigen::VectorXd lam = Eigen::VectorXd::Constant(m, 1.0 / m);
    if (s > 0) {
      for (int j = 0; j < m; ++j) lam[j] = 0.05 + rng.uniform();
      lam /= lam.sum();
    }
    Eigen::VectorXd lam_best = lam;
    double f_best_start = std::numeric_limits<double>::infinity();

    for (int phase = 0; phase < opts.phases; ++phase) {
      const double step = scale * std::pow(0.5, phase);
      for (int it = 0; it < opts.iters_per_phase; ++it) {
        const Eigen::VectorXd c = point_of(lam);
        int worst = 0;
        const double f = f_of(c, worst);
        ++evals;
        if (f < f_best_start) {
          f_best_start = f;
          lam_best = lam;
        }
        const Eigen::VectorXd g = norm_subgradient(norm, c - vertices[static_cast<std::size_t>(worst)]);
        if (g.isZero(0.0)) break;  // radius 0: coincident points
        Eigen::VectorXd glam(m);
        for (int j = 0; j < m; ++j) glam[j] = vertices[static_cast<std::size_t>(j)].dot(g);
        const double gn = glam.norm();
        if (gn == 0.0) break;
        lam = project_simplex(lam - (step / gn) * glam);
      }
      lam = lam_best;  // restart each phase from the incumbent
    }
    if (f_best_start < best_f) {
      best_f = f_best_start;
      best_lam = lam_best;
    }
  }

  // Active-set descent polish: plain subgradient steps zigzag at kinks of the
  // max, so finish with a bundle-style loop. A small LP finds a simplex-
  // tangent direction that decreases every near-active distance at once; a
  // backtracking line search along it makes monotone progress until no such
  // direction exists.
  for (int round = 0; round < 300; ++round) {
    const Eigen::VectorXd c = point_of(best_lam);
    std::vector<int> active;
    std::vector<Eigen::VectorXd> glams;
    double fmax = 0.0;
    for (int i = 0; i < m; ++i) {
      const double fi = eval_kernel(norm, c, vertices[static_cast<std::size_t>(i)]);
      fmax = std::max(fmax, fi);
    }
    ++evals;
    best_f = std::min(best_f, fmax);
    const double act_tol = std::max(1e-12, 1e-7 * fmax);
    for (int i = 0; i < m; ++i) {
      const double fi = eval_kernel(norm, c, vertices[static_cast<std::size_t>(i)]);
      if (fi >= fmax - act_tol) {
        const Eigen::VectorXd g =
            norm_subgradient(norm, c - vertices[static_cast<std::size_t>(i)]);
        Eigen::VectorXd glam(m);
        for (int j = 0; j < m; ++j) glam[j] = vertices[static_cast<std::size_t>(j)].dot(g);
        active.push_back(i);
        glams.push_back(std::move(glam));
      }
    }
    if (fmax == 0.0) break;

    // Direction LP over u = d + 1 in [0,2]^m: minimize the worst directional
    // derivative s among active vertices, keeping sum d = 0 and d_j >= 0 on
    // the boundary of the simplex (u_j >= 1 there).
    const int na = static_cast<int>(active.size());
    const int nvar = m + 2;  // u, s_plus, s_minus
    std::vector<int> boundary;
    for (int j = 0; j < m; ++j)
      if (best_lam[j] <= 1e-12) boundary.push_back(j);
    const int nb = static_cast<int>(boundary.size());
    lp::Problem dir;
    dir.A = Eigen::MatrixXd::Zero(na + m + nb + 1, nvar);
    dir.b = Eigen::VectorXd::Zero(na + m + nb + 1);
    dir.c = Eigen::VectorXd::Zero(nvar);
    dir.rel.assign(static_cast<std::size_t>(na + m + nb + 1), lp::Rel::LE);
    for (int a = 0; a < na; ++a) {
      dir.A.row(a).head(m) = glams[static_cast<std::size_t>(a)];
      dir.A(a, m) = -1.0;
      dir.A(a, m + 1) = 1.0;
      dir.b[a] = glams[static_cast<std::size_t>(a)].sum();
    }
    for (int j = 0; j < m; ++j) {
      dir.A(na + j, j) = 1.0;
      dir.b[na + j] = 2.0;
    }
    for (int k = 0; k < nb; ++k) {
      dir.A(na + m + k, boundary[static_cast<std::size_t>(k)]) = 1.0;
      dir.b[na + m + k] = 1.0;
      dir.rel[static_cast<std::size_t>(na + m + k)] = lp::Rel::GE;
    }
    dir.A.row(na + m + nb).head(m).setOnes();
    dir.b[na + m + nb] = static_cast<double>(m);
    dir.rel[static_cast<std::size_t>(na + m + nb)] = lp::Rel::EQ;
    dir.c[m] = -1.0;
    dir.c[m + 1] = 1.0;
    const lp::Solution ds = lp::maximize(dir, lp::Options{});
    if (ds.status != lp::Status::Optimal) break;
    const double slope = -(ds.objective);
    if (slope > -1e-10 * (1.0 + fmax)) break;  // no common descent direction

    Eigen::VectorXd d(m);
    for (int j = 0; j < m; ++j) d[j] = ds.x[j] - 1.0;
    double t_max = 1.0;
    for (int j = 0; j < m; ++j)
      if (d[j] < -1e-15) t_max = std::min(t_max, best_lam[j] / -d[j]);
    bool moved = false;
    double t = t_max;
    for (int bt = 0; bt < 50 && !moved; ++bt, t *= 0.5) {
      Eigen::VectorXd cand = (best_lam + t * d).cwiseMax(0.0);
      cand /= cand.sum();
      const double f = f_at_lam(cand);
      if (f < best_f - 1e-16) {
        best_f = f;
        best_lam = cand;
        moved = true;
      }
    }
    if (!moved) break;
  }

  const Eigen::VectorXd best_c = point_of(best_lam);
  CenterResult out;
  out.ball = BallSpec{best_c, best_f, norm};
  out.lower_bound = lb;
  out.evaluations = evals;
  // Either the generic bracket closed, or the step schedules bottomed out far
  // below tol (subgradient phases plus the 1e-12-level polish).
  out.converged = (best_f - lb <= tol) || (scale * std::pow(0.5, opts.phases - 1) < 0.01 * tol);
  return out;
}

CoveringResult covering_number(const FiniteKernelSpace& space, const std::vector<int>& H,
                               const std::vector<int>& L, double t, CoverMode mode,
                               const CoverOptions& opts) {
  if (H.empty() || L.empty()) throw InputError("covering_number: empty subset");
  if (!(t > 0.0)) throw InputError("covering_number: t must be positive");
  const CoverInstance inst = build_cover_instance(space, H, L, t);

  CoveringResult out;
  out.t = t;
  Bitset all(inst.n_elems);
  for (int i = 0; i < inst.n_elems; ++i) all.set(i);
  Bitset reach(inst.n_elems);
  for (const auto& s : inst.sets)
    for (std::size_t k = 0; k < s.w.size(); ++k) reach.w[k] |= s.w[k];
  for (std::size_t k = 0; k < all.w.size(); ++k) {
    if ((reach.w[k] & all.w[k]) != all.w[k]) {
      out.infinite = true;
      return out;
    }
  }

  std::vector<int> picked = greedy_cover(inst, all);
  bool minimal = false, exceeded = false;
  if (mode == CoverMode::Exact) {
    CoverSearch search(inst, opts.node_budget);
    search.best = picked;
    std::vector<int> chosen;
    search.dfs(all, chosen);
    if (!search.exhausted) {
      picked = search.best;
      minimal = true;
    } else {
      picked = search.best.size() < picked.size() || picked.empty() ? search.best : picked;
      exceeded = true;
    }
  }

  // Post-hoc validity scan: the returned balls must cover L.
  Bitset check(inst.n_elems);
  for (int j : picked)
    for (std::size_t k = 0; k < check.w.size(); ++k)
      check.w[k] |= inst.sets[static_cast<std::size_t>(j)].w[k];
  for (std::size_t k = 0; k < all.w.size(); ++k)
    if ((check.w[k] & all.w[k]) != all.w[k])
      throw InternalConsistencyError("covering_number: produced a non-cover");

  out.n = static_cast<long>(picked.size());
  out.minimal = minimal;
  out.budget_exceeded = exceeded;
  out.centers.reserve(picked.size());
  for (int j : picked) out.centers.push_back(H[static_cast<std::size_t>(j)]);
  return out;
}

CoveringResult covering_number(const FiniteKernelSpace& space, const std::string& H_name,
                               const std::string& L_name, double t, CoverMode mode,
                               const CoverOptions& opts) {
  return covering_number(space, space.subset(H_name), space.subset(L_name), t, mode, opts);
}

double entropy_lower_bound(const FiniteKernelSpace& space, const std::vector<int>& H,
                           const std::vector<int>& L, int n, const CoverOptions& opts) {
  if (n < 1) throw InputError("entropy_lower_bound: n must be >= 1");
  std::vector<double> breakpoints;
  for (int x : L)
    for (int y : H) {
      const double v = space.kernel()(x, y);
      if (v > 0.0) breakpoints.push_back(v);
    }
  std::sort(breakpoints.begin(), breakpoints.end(), std::greater<double>());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  for (double t : breakpoints) {
    const CoveringResult cover = covering_number(space, H, L, t, CoverMode::Exact, opts);
    if (cover.infinite) return t;  // N = +inf > n at this radius
    if (!cover.minimal) continue;  // unproven count: never claim a bound from it
    if (cover.n > n) return t;
  }
  return 0.0;
}

double entropy_lower_bound(const FiniteKernelSpace& space, const std::string& H_name,
                           const std::string& L_name, int n, const CoverOptions& opts) {
  return entropy_lower_bound(space, space.subset(H_name), space.subset(L_name), n, opts);
}

std::vector<Eigen::VectorXd> convex_hull_2d(const std::vector<Eigen::VectorXd>& pts) {
  for (const auto& p : pts)
    if (p.size() != 2) throw InputError("convex_hull_2d: points must be 2-D");
  std::vector<Eigen::Vector2d> v;
  v.reserve(pts.size());
  for (const auto& p : pts) v.emplace_back(p[0], p[1]);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  });
  v.erase(std::unique(v.begin(), v.end(), [](const auto& a, const auto& b) { return a == b; }),
          v.end());
  const auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                        const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  if (v.size() <= 2) {
    std::vector<Eigen::VectorXd> out;
    for (const auto& p : v) out.push_back(p);
    return out;
  }
  std::vector<Eigen::Vector2d> hull(2 * v.size());
  std::size_t k = 0;
  for (const auto& p : v) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = v.rbegin() + 1; it != v.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  std::vector<Eigen::VectorXd> out;
  out.reserve(hull.size());
  for (const auto& p : hull) out.push_back(p);
  return out;
}

bool point_in_convex_polygon(const Eigen::Vector2d& p, const std::vector<Eigen::VectorXd>& hull,
                             double slack) {
  const std::size_t n = hull.size();
  if (n == 0) return false;
  if (n == 1) return (p - Eigen::Vector2d(hull[0])).norm() <= slack;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d a = hull[i], b = hull[(i + 1) % n];
    const double cr = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
    if (cr < -slack) return false;
  }
  if (n == 2) {
    // Degenerate hull (segment): also require p between the endpoints.
    const Eigen::Vector2d a = hull[0], b = hull[1];
    const double t = (p - a).dot(b - a);
    return t >= -slack && t <= (b - a).squaredNorm() + slack &&
           std::abs((b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x())) <=
               slack * (1.0 + (b - a).norm());
  }
  return true;
}

namespace {

bool point_in_hull_lp(const Eigen::VectorXd& p, const std::vector<Eigen::VectorXd>& vertices) {
  const int m = static_cast<int>(vertices.size());
  const int d = static_cast<int>(p.size());
  lp::Problem prob;
  prob.A = Eigen::MatrixXd::Zero(d + 1, m);
  prob.b = Eigen::VectorXd::Zero(d + 1);
  prob.c = Eigen::VectorXd::Zero(m);
  prob.rel.assign(static_cast<std::size_t>(d + 1), lp::Rel::EQ);
  for (int j = 0; j < m; ++j) prob.A.block(0, j, d, 1) = vertices[static_cast<std::size_t>(j)];
  prob.b.head(d) = p;
  prob.A.row(d).setOnes();
  prob.b[d] = 1.0;
  lp::Options lo;
  lo.feas_tol = 1e-8;
  return lp::maximize(prob, lo).status == lp::Status::Optimal;
}

}  // namespace

std::vector<Eigen::VectorXd> fill_convex_hull_grid(const std::vector<Eigen::VectorXd>& vertices,
                                                   double resolution, long max_points) {
  if (vertices.empty()) throw InputError("fill_convex_hull_grid: no vertices");
  const Eigen::Index d = vertices.front().size();
  if (d != 2 && d != 3)
    throw InputError("fill_convex_hull_grid: grids are supported in 2-D and 3-D only");
  if (!(resolution > 0.0)) throw InputError("fill_convex_hull_grid: resolution must be positive");

  Eigen::VectorXd lo = vertices.front(), hi = vertices.front();
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  std::vector<long> from(static_cast<std::size_t>(d)), to(static_cast<std::size_t>(d));
  long cells = 1;
  for (Eigen::Index k = 0; k < d; ++k) {
    from[static_cast<std::size_t>(k)] = static_cast<long>(std::ceil(lo[k] / resolution - 1e-9));
    to[static_cast<std::size_t>(k)] = static_cast<long>(std::floor(hi[k] / resolution + 1e-9));
    cells *= std::max<long>(0, to[static_cast<std::size_t>(k)] - from[static_cast<std::size_t>(k)] + 1);
  }
  if (cells > max_points)
    throw BudgetExceeded("fill_convex_hull_grid: lattice would have " + std::to_string(cells) +
                             " candidate points, budget " + std::to_string(max_points),
                         static_cast<double>(cells));

  std::vector<Eigen::VectorXd> out;
  if (d == 2) {
    const auto hull = convex_hull_2d(vertices);
    for (long i = from[0]; i <= to[0]; ++i) {
      for (long j = from[1]; j <= to[1]; ++j) {
        Eigen::Vector2d p(static_cast<double>(i) * resolution,
                          static_cast<double>(j) * resolution);
        if (point_in_convex_polygon(p, hull, 1e-9)) out.emplace_back(p);
      }
    }
  } else {
    for (long i = from[0]; i <= to[0]; ++i)
      for (long j = from[1]; j <= to[1]; ++j)
        for (long k = from[2]; k <= to[2]; ++k) {
          Eigen::Vector3d p(static_cast<double>(i) * resolution,
                            static_cast<double>(j) * resolution,
                            static_cast<double>(k) * resolution);
          if (point_in_hull_lp(p, vertices)) out.emplace_back(p);
        }
  }
  for (const auto& v : vertices) out.push_back(v);
  if (static_cast<long>(out.size()) > max_points)
    throw BudgetExceeded("fill_convex_hull_grid: grid exceeds point budget",
                         static_cast<double>(out.size()));
  return out;
}

SzekeresReport szekeres_check(const std::vector<Eigen::VectorXd>& vertices, const NormSpec& norm,
                              double grid_resolution, double tol, const SzekeresOptions& opts) {
  if (vertices.empty()) throw InputError("szekeres_check: no vertices");
  const Eigen::Index d = vertices.front().size();
  if (d != 2 && d != 3) throw InputError("szekeres_check: vertices must be 2-D or 3-D");

  SzekeresReport rep;
  rep.center = chebyshev_center(vertices, norm, tol, opts.center);
  rep.rho = rep.center.ball.radius;
  rep.resolution = grid_resolution;

  const auto grid = fill_convex_hull_grid(vertices, grid_resolution, opts.max_grid_points);
  rep.grid_points = static_cast<long>(grid.size());
  const FiniteKernelSpace space = build_space(grid, norm);
  GameOptions gopts = opts.game;
  gopts.tol = opts.game_tol;
  const GameSolution g = game_value(space, space.subset("H"), space.subset("L"), gopts);
  rep.r_lo = g.value_lo;
  rep.r_hi = g.value_hi;
  rep.r = g.value();
  rep.game_converged = g.converged;
  rep.discrepancy = std::abs(rep.r - rep.rho);
  return rep;
}

}  // namespace rvz
