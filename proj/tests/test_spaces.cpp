#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rvz/errors.hpp"
#include "rvz/spaces.hpp"

using namespace rvz;

TEST_CASE("witness configurations: basis vectors at exact pairwise distances") {
  const auto w = witness_configuration(NormSpec::lp(2.0), 3, 3);
  REQUIRE(w.points.size() == 3);
  CHECK(w.points[0][0] == 1.0);
  CHECK(w.points[1][1] == 1.0);
  CHECK(w.points[2][2] == 1.0);

  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    const NormSpec norm = NormSpec::lp(p);
    const auto cfg = witness_configuration(norm, 4, 6);
    const double expect = std::pow(2.0, 1.0 / p);
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
      for (std::size_t j = i + 1; j < cfg.points.size(); ++j)
        CHECK(eval_kernel(norm, cfg.points[i], cfg.points[j]) == expect);  // exact
  }
  // 0<p<1 metric: pairwise distance exactly 2
  const NormSpec metric = NormSpec::lp_metric(0.5);
  const auto cfg = witness_configuration(metric, 3, 4);
  for (std::size_t i = 0; i < cfg.points.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.points.size(); ++j)
      CHECK(eval_kernel(metric, cfg.points[i], cfg.points[j]) == 2.0);

  CHECK_THROWS_AS(witness_configuration(NormSpec::lp(2.0), 5, 3), InputError);
}

TEST_CASE("lp bound formulas at frozen evaluation points") {
  CHECK(lp_lower_bound(2.0, 4) == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(lp_lower_bound(1.0, 10) == doctest::Approx(1.8));
  CHECK(lp_lower_bound(0.5, 2) == doctest::Approx(1.0));
  CHECK(lp_upper_bound(1.0, 100, 0.1) == doctest::Approx(2.5));
  // default eta at p=2, n=10^4 is 0.1; value sits within 0.25 of sqrt(2)
  CHECK(default_eta(2.0, 10000) == doctest::Approx(0.1));
  CHECK(std::abs(lp_upper_bound(2.0, 10000) - std::sqrt(2.0)) <= 0.25);
  CHECK_THROWS_AS(lp_upper_bound(2.0, 4, -0.1), InputError);
}

TEST_CASE("metric-case lower bound 2(n-1)/n") {
  CHECK(lp_metric_lower_bound(2) == doctest::Approx(1.0));
  CHECK(lp_metric_lower_bound(10) == doctest::Approx(1.8));
  CHECK(lp_metric_lower_bound(1000) == doctest::Approx(1.998));
  CHECK(lp_metric_lower_bound(1) == doctest::Approx(0.0));
}

TEST_CASE("envelope sandwich for all n and both sides approach the constant") {
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    const double target = lp_sphere_constant(p);
    double prev_lower = -1.0;
    for (int n : {2, 3, 5, 10, 100, 10000, 1000000}) {
      const double lo = lp_lower_bound(p, n);
      const double hi = lp_upper_bound(p, n);
      CHECK(lo <= target);
      CHECK(hi >= target);
      CHECK(lo >= prev_lower);  // lower bound is nondecreasing in n
      prev_lower = lo;
    }
    // both sides converge (loose check; the 0.01-at-1e6 sharpness is probed
    // in the acceptance suite, which reports the measured distances)
    CHECK(target - lp_lower_bound(p, 1000000) <= 0.02);
    CHECK(lp_upper_bound(p, 1000000) - target <= 0.2);
  }
}

TEST_CASE("sphere samplers normalize to the unit sphere") {
  for (const auto& norm :
       {NormSpec::lp(1.0), NormSpec::lp(2.0), NormSpec::lp(0.5), NormSpec::lp_metric(0.5)}) {
    const auto sample = sphere_sample_random(norm, 5, 50, 1234);
    for (const auto& x : sample.points) CHECK(std::abs(norm_value(norm, x) - 1.0) <= 1e-12);
  }
  const auto grid2 = sphere_sample_grid(NormSpec::lp(2.0), 2, 16);
  CHECK(grid2.points.size() == 16);
  for (const auto& x : grid2.points) CHECK(std::abs(x.norm() - 1.0) <= 1e-12);

  const auto grid3 = sphere_sample_grid(NormSpec::lp(2.0), 3, 200);
  CHECK(grid3.points.size() >= 150);
  for (const auto& x : grid3.points) CHECK(std::abs(x.norm() - 1.0) <= 1e-12);
}

TEST_CASE("square-boundary walk hits the corners exactly") {
  const auto sq = sphere_sample_grid(NormSpec::sup(), 2, 800);
  REQUIRE(sq.points.size() == 800);
  int corners = 0;
  for (const auto& p : sq.points) {
    CHECK(std::abs(p.cwiseAbs().maxCoeff() - 1.0) == 0.0);  // exactly on the boundary
    if (std::abs(p[0]) == 1.0 && std::abs(p[1]) == 1.0) ++corners;
  }
  CHECK(corners == 4);
}

TEST_CASE("random sampler reproducibility") {
  const auto a = sphere_sample_random(NormSpec::lp(2.0), 4, 32, 99);
  const auto b = sphere_sample_random(NormSpec::lp(2.0), 4, 32, 99);
  for (std::size_t i = 0; i < a.points.size(); ++i)
    CHECK((a.points[i] - b.points[i]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lp experiment: measurements never violate the closed-form upper bound") {
  for (double p : {0.5, 1.0, 2.0}) {
    const auto res = lp_experiment(p, {2, 4, 8}, 2, 400, 2024);
    for (const auto& row : res.rows) {
      CHECK(row.within_upper);
      CHECK(row.measured_q <= row.upper + 1e-9);
      CHECK(row.measured_q >= row.measured_min_u);
    }
  }
}

TEST_CASE("named constants golden values") {
  const auto table = named_constants();
  const auto find = [&](const std::string& key) -> const NamedConstant& {
    for (const auto& c : table)
      if (c.key == key) return c;
    REQUIRE(false);
    return table.front();
  };
  CHECK(find("hilbert").value_lo == std::sqrt(2.0));
  CHECK(find("lp_metric_sub1").value_lo == 2.0);
  CHECK(find("sigma_real").value_lo == 1.5);
  CHECK(find("sigma_complex").value_lo ==
        doctest::Approx(1.4359911241769174).epsilon(1e-15));
  CHECK(find("c0_real").is_interval);
  CHECK(find("c0_real").value_lo == 1.0);
  CHECK(find("c0_real").value_hi == 1.5);
  CHECK(find("c0_complex").value_hi == find("sigma_complex").value_lo);
  CHECK(find("ck_dual_chebyshev").value_lo == 2.0);
  CHECK(lp_sphere_constant(2.0) == std::sqrt(2.0));
  CHECK(lp_sphere_constant(1.0) == 2.0);
  CHECK(lp_sphere_constant(0.5) == 4.0);
}

TEST_CASE("circle grid value approaches 4/pi") {
  GameOptions game;
  game.tol = 1e-7;
  const auto res = subspace_convergence(NormSpec::lp(2.0), {2}, 360, kDefaultSeed, game);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].converged);
  CHECK(res.rows[0].value == doctest::Approx(4.0 / 3.14159265358979323846).epsilon(1e-4));
}

TEST_CASE("sign vectors and entropy growth") {
  CHECK(sign_vectors(3).size() == 8);
  const auto res = entropy_growth_experiment({2, 3}, 1.9);
  REQUIRE(res.rows.size() == 2);
  CHECK(res.rows[0].covering_number == 4);
  CHECK(res.rows[0].exact);
  CHECK(res.rows[1].covering_number == 8);
  CHECK(res.rows[1].exact);
  CHECK(res.rows[1].implied_n == 7);  // m_bar_7 >= 1.9 on the d=3 sample

  // super-critical radius: a single ball suffices (distance 2 < 2.1)
  const auto wide = entropy_growth_experiment({3}, 2.1);
  CHECK(wide.rows[0].covering_number == 1);

  CHECK_THROWS_AS(entropy_growth_experiment({15}, 1.9, 12), BudgetExceeded);
}
