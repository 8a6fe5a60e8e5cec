// Test-only oracles, deliberately independent of the library's computation
// paths: fresh enumeration arithmetic, exhaustive searches, closed forms.
#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "rvz/norms.hpp"
#include "rvz/rng.hpp"
#include "rvz/space.hpp"

namespace oracles {

struct BruteCheb {
  double m_n;
  double m_bar_n;
};

// Plain odometer over nondecreasing index tuples with per-leaf fresh sums
// (no incremental column accumulation, unlike the library path).
inline BruteCheb brute_force_cheb(const Eigen::MatrixXd& K, const std::vector<int>& H,
                                  const std::vector<int>& L, int n) {
  std::vector<int> tuple(static_cast<std::size_t>(n), 0);
  const int h = static_cast<int>(H.size());
  double best_min = -std::numeric_limits<double>::infinity();
  double best_max = std::numeric_limits<double>::infinity();
  while (true) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int x : L) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += K(x, H[static_cast<std::size_t>(tuple[static_cast<std::size_t>(k)])]);
      const double avg = s / n;
      lo = std::min(lo, avg);
      hi = std::max(hi, avg);
    }
    best_min = std::max(best_min, lo);
    best_max = std::min(best_max, hi);
    // advance odometer (nondecreasing tuples)
    int k = n - 1;
    while (k >= 0 && tuple[static_cast<std::size_t>(k)] == h - 1) --k;
    if (k < 0) break;
    const int v = tuple[static_cast<std::size_t>(k)] + 1;
    for (int j = k; j < n; ++j) tuple[static_cast<std::size_t>(j)] = v;
  }
  return {best_min, best_max};
}

// Exact smallest enclosing disc in the Euclidean plane by exhausting the
// candidate set: diametral pairs and circumcircles of triples.
struct Disc {
  Eigen::Vector2d center;
  double radius;
};

inline std::optional<Disc> circumcircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                        const Eigen::Vector2d& c) {
  const double d = 2.0 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) +
                          c.x() * (a.y() - b.y()));
  if (std::abs(d) < 1e-14) return std::nullopt;
  const double ux = ((a.squaredNorm()) * (b.y() - c.y()) + (b.squaredNorm()) * (c.y() - a.y()) +
                     (c.squaredNorm()) * (a.y() - b.y())) /
                    d;
  const double uy = ((a.squaredNorm()) * (c.x() - b.x()) + (b.squaredNorm()) * (a.x() - c.x()) +
                     (c.squaredNorm()) * (b.x() - a.x())) /
                    d;
  Eigen::Vector2d u(ux, uy);
  return Disc{u, (u - a).norm()};
}

inline Disc exact_seb_l2(const std::vector<Eigen::VectorXd>& pts) {
  const auto covers = [&](const Disc& d) {
    for (const auto& p : pts)
      if ((Eigen::Vector2d(p) - d.center).norm() > d.radius + 1e-10) return false;
    return true;
  };
  Disc best{Eigen::Vector2d(pts[0]), 0.0};
  bool found = false;
  const int m = static_cast<int>(pts.size());
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const Eigen::Vector2d a(pts[static_cast<std::size_t>(i)]), b(pts[static_cast<std::size_t>(j)]);
      Disc d{(a + b) / 2.0, (a - b).norm() / 2.0};
      if (covers(d) && (!found || d.radius < best.radius)) {
        best = d;
        found = true;
      }
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        const auto d = circumcircle(Eigen::Vector2d(pts[static_cast<std::size_t>(i)]),
                                    Eigen::Vector2d(pts[static_cast<std::size_t>(j)]),
                                    Eigen::Vector2d(pts[static_cast<std::size_t>(k)]));
        if (d && covers(*d) && (!found || d->radius < best.radius)) {
          best = *d;
          found = true;
        }
      }
  return best;
}

// Exhaustive minimum set cover of L by open balls B(y, t), y in H. |H| <= ~20.
inline long exhaustive_cover(const Eigen::MatrixXd& K, const std::vector<int>& H,
                             const std::vector<int>& L, double t) {
  const int h = static_cast<int>(H.size());
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(h), 0);
  std::uint64_t full = 0;
  for (std::size_t i = 0; i < L.size(); ++i) full |= 1ULL << i;
  for (int j = 0; j < h; ++j)
    for (std::size_t i = 0; i < L.size(); ++i)
      if (K(L[i], H[static_cast<std::size_t>(j)]) < t) masks[static_cast<std::size_t>(j)] |= 1ULL << i;
  long best = -1;
  for (std::uint64_t sub = 0; sub < (1ULL << h); ++sub) {
    std::uint64_t u = 0;
    for (int j = 0; j < h; ++j)
      if ((sub >> j) & 1ULL) u |= masks[static_cast<std::size_t>(j)];
    if (u == full) {
      const long c = static_cast<long>(__builtin_popcountll(sub));
      if (best < 0 || c < best) best = c;
    }
  }
  return best;  // -1 when no cover exists
}

// Minimum-radius scan of the lattice inside the bounding box, constrained to
// conv(vertices) membership by convexity of the max-distance function
// (scanning a fine superset lattice of the hull suffices as an upper-accuracy
// oracle for 2-D tests).
inline double grid_scan_center_radius(const std::vector<Eigen::VectorXd>& vertices,
                                      const rvz::NormSpec& norm, double h) {
  Eigen::Vector2d lo(vertices[0]), hi(vertices[0]);
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(Eigen::Vector2d(v));
    hi = hi.cwiseMax(Eigen::Vector2d(v));
  }
  double best = std::numeric_limits<double>::infinity();
  // Hull membership via barycentric LP is the library's job; the oracle scans
  // convex combinations of vertices directly on a simplex lattice instead.
  const int m = static_cast<int>(vertices.size());
  if (m == 3) {
    const int steps = static_cast<int>(1.0 / h);
    for (int i = 0; i <= steps; ++i)
      for (int j = 0; j <= steps - i; ++j) {
        const double a = static_cast<double>(i) / steps;
        const double b = static_cast<double>(j) / steps;
        const double c = 1.0 - a - b;
        Eigen::VectorXd pt = a * vertices[0] + b * vertices[1] + c * vertices[2];
        double worst = 0.0;
        for (const auto& v : vertices) worst = std::max(worst, rvz::eval_kernel(norm, pt, v));
        best = std::min(best, worst);
      }
  }
  return best;
}

// Deterministic random point-cloud metric space.
inline rvz::FiniteKernelSpace random_metric_space(rvz::Rng& rng, int max_points = 10,
                                                  int max_dim = 4) {
  const int n = 2 + static_cast<int>(rng.index(static_cast<std::uint64_t>(max_points - 1)));
  const int d = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(max_dim)));
  const double pick = rng.uniform();
  const rvz::NormSpec norm = pick < 0.4   ? rvz::NormSpec::lp(2.0)
                             : pick < 0.7 ? rvz::NormSpec::lp(1.0)
                                          : rvz::NormSpec::sup();
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd x(d);
    for (int k = 0; k < d; ++k) x[k] = rng.uniform(-1.0, 1.0);
    pts.push_back(std::move(x));
  }
  return rvz::build_space(pts, norm);
}

// Random symmetric nonnegative kernel with zero diagonal.
inline Eigen::MatrixXd random_kernel(rvz::Rng& rng, int n) {
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.uniform();
      K(i, j) = v;
      K(j, i) = v;
    }
  return K;
}

}  // namespace oracles
