#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rvz/chebyshev.hpp"
#include "rvz/errors.hpp"

using namespace rvz;

namespace {

FiniteKernelSpace two_point_space() {
  Eigen::MatrixXd K(2, 2);
  K << 0, 1, 1, 0;
  return FiniteKernelSpace(K, {});
}

FiniteKernelSpace collinear3() {
  Eigen::MatrixXd K(3, 3);
  K << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  return FiniteKernelSpace(K, {});
}

FiniteKernelSpace equilateral() {
  Eigen::MatrixXd K(3, 3);
  K << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  return FiniteKernelSpace(K, {});
}

}  // namespace

TEST_CASE("two-point space, n = 1 and n = 2") {
  const auto sp = two_point_space();
  const auto r1 = cheb_n(sp, "H", "L", 1);
  CHECK(r1.m_n == doctest::Approx(0.0));
  CHECK(r1.m_bar_n == doctest::Approx(1.0));
  const auto r2 = cheb_n(sp, "H", "L", 2);
  CHECK(r2.m_n == doctest::Approx(0.5));
  CHECK(r2.m_bar_n == doctest::Approx(0.5));
  CHECK(r2.argmax_config == std::vector<int>{0, 1});

  const auto iv2 = rendezvous_set_n(sp, "H", "L", 2);
  CHECK(iv2.lo == doctest::Approx(0.5));
  CHECK(iv2.hi == doctest::Approx(0.5));
  const auto iv1 = rendezvous_set_n(sp, "H", "L", 1);
  CHECK(iv1.lo == doctest::Approx(0.0));
  CHECK(iv1.hi == doctest::Approx(1.0));
}

TEST_CASE("forced singleton configuration when H and L are disjoint") {
  Eigen::MatrixXd K(2, 2);
  K << 0, 1, 1, 0;
  FiniteKernelSpace::Subsets sub;
  sub["H"] = {0};
  sub["L"] = {1};
  const FiniteKernelSpace sp(K, sub);
  const auto iv = rendezvous_set_n(sp, "H", "L", 1);
  CHECK(iv.lo == doctest::Approx(1.0));
  CHECK(iv.hi == doctest::Approx(1.0));
}

TEST_CASE("equilateral triangle n=3: value 2/3, frozen from the multiset oracle") {
  const auto sp = equilateral();
  // oracle over all C(5,3)=10 multisets
  const auto oracle = oracles::brute_force_cheb(sp.kernel(), {0, 1, 2}, {0, 1, 2}, 3);
  CHECK(oracle.m_n == doctest::Approx(2.0 / 3.0));
  CHECK(oracle.m_bar_n == doctest::Approx(2.0 / 3.0));
  const auto r = cheb_n(sp, "H", "L", 3);
  CHECK(r.m_n == doctest::Approx(oracle.m_n));
  CHECK(r.m_bar_n == doctest::Approx(oracle.m_bar_n));
  CHECK(r.argmax_config == std::vector<int>{0, 1, 2});
}

TEST_CASE("agreement with the independent enumeration oracle on random spaces") {
  Rng rng(314);
  for (int trial = 0; trial < 25; ++trial) {
    const auto sp = oracles::random_metric_space(rng, 7);
    for (int n = 1; n <= 3; ++n) {
      const auto oracle =
          oracles::brute_force_cheb(sp.kernel(), sp.subset("H"), sp.subset("L"), n);
      const auto r = cheb_n(sp, "H", "L", n);
      CHECK(r.m_n == doctest::Approx(oracle.m_n).epsilon(1e-12));
      CHECK(r.m_bar_n == doctest::Approx(oracle.m_bar_n).epsilon(1e-12));
    }
  }
}

TEST_CASE("limit brackets") {
  const auto lb2 = limit_bracket(two_point_space(), "H", "L", 2);
  CHECK(lb2.lower == doctest::Approx(0.5));
  CHECK(lb2.upper == doctest::Approx(0.5));
  CHECK(lb2.exact == false);

  const auto lb3 = limit_bracket(collinear3(), "H", "L", 4);
  CHECK(lb3.lower <= 1.0 + 1e-12);
  CHECK(lb3.upper >= 1.0 - 1e-12);

  const auto lbt = limit_bracket(equilateral(), "H", "L", 3);
  CHECK(lbt.lower <= 2.0 / 3.0 + 1e-12);
  CHECK(lbt.upper >= 2.0 / 3.0 - 1e-12);
}

TEST_CASE("monotone envelopes in n_max") {
  Rng rng(99);
  const auto sp = oracles::random_metric_space(rng, 6);
  double prev_lower = -1e300, prev_upper = 1e300;
  for (int nmax = 1; nmax <= 4; ++nmax) {
    const auto lb = limit_bracket(sp, "H", "L", nmax);
    CHECK(lb.lower >= prev_lower - 1e-15);
    CHECK(lb.upper <= prev_upper + 1e-15);
    prev_lower = lb.lower;
    prev_upper = lb.upper;
  }
}

TEST_CASE("rendezvous_interval collapses to the game value on diagonal instances") {
  const auto iv = rendezvous_interval(equilateral(), "H", "L", 3);
  CHECK(iv.lo == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(iv.width() == doctest::Approx(0.0));

  const auto iv2 = rendezvous_interval(two_point_space(), "H", "L", 2);
  CHECK(iv2.lo == doctest::Approx(0.5).epsilon(1e-9));

  const auto iv3 = rendezvous_interval(collinear3(), "H", "L", 4);
  CHECK(iv3.lo == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rendezvous_interval keeps the bracket when H != L") {
  Eigen::MatrixXd K(3, 3);
  K << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  FiniteKernelSpace::Subsets sub;
  sub["H"] = {0, 2};
  sub["L"] = {0, 1, 2};
  const FiniteKernelSpace sp(K, sub);
  const auto iv = rendezvous_interval(sp, "H", "L", 3);
  // brackets only; must contain the game interval
  GameOptions gopts;
  const auto g = game_value(sp, sp.subset("H"), sp.subset("L"), gopts);
  CHECK(iv.lo <= g.value_lo + 1e-9);
  CHECK(iv.hi >= g.value_hi - 1e-9);
}

TEST_CASE("game value stays inside every [m_n, m_bar_n] on diagonal instances") {
  Rng rng(2718);
  for (int trial = 0; trial < 30; ++trial) {
    const int n_pts = 2 + static_cast<int>(rng.index(7));
    const Eigen::MatrixXd K = oracles::random_kernel(rng, n_pts);
    const FiniteKernelSpace sp(K, {});
    const auto g = game_value(sp, "H", "L");
    REQUIRE(g.converged);
    for (int n = 1; n <= 5; ++n) {
      const auto r = cheb_n(sp, "H", "L", n);
      CHECK(r.m_n <= g.value_lo + 1e-9);
      CHECK(r.m_bar_n >= g.value_hi - 1e-9);
    }
  }
}

TEST_CASE("permutation invariance") {
  Rng rng(555);
  const int n_pts = 6;
  const Eigen::MatrixXd K = oracles::random_kernel(rng, n_pts);
  const FiniteKernelSpace sp(K, {});

  // relabel via the reversal permutation
  Eigen::MatrixXd K2(n_pts, n_pts);
  for (int i = 0; i < n_pts; ++i)
    for (int j = 0; j < n_pts; ++j) K2(i, j) = K(n_pts - 1 - i, n_pts - 1 - j);
  const FiniteKernelSpace sp2(K2, {});

  for (int n = 1; n <= 3; ++n) {
    const auto a = cheb_n(sp, "H", "L", n);
    const auto b = cheb_n(sp2, "H", "L", n);
    CHECK(a.m_n == doctest::Approx(b.m_n).epsilon(1e-13));
    CHECK(a.m_bar_n == doctest::Approx(b.m_bar_n).epsilon(1e-13));
  }
}

TEST_CASE("results are independent of the thread count") {
  Rng rng(777);
  const auto sp = oracles::random_metric_space(rng, 9);
  ChebOptions seq;
  seq.threads = 1;
  ChebOptions par;
  par.threads = 4;
  for (int n = 1; n <= 4; ++n) {
    const auto a = cheb_n(sp, "H", "L", n, seq);
    const auto b = cheb_n(sp, "H", "L", n, par);
    CHECK(a.m_n == b.m_n);  // bit-identical, not just approximate
    CHECK(a.m_bar_n == b.m_bar_n);
    CHECK(a.argmax_config == b.argmax_config);
    CHECK(a.argmin_config == b.argmin_config);
  }
}

TEST_CASE("enumeration budget error names the required size") {
  const auto sp = two_point_space();
  ChebOptions opts;
  opts.enumeration_budget = 2;  // C(3,2) = 3 > 2
  try {
    cheb_n(sp, "H", "L", 2, opts);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.required == doctest::Approx(3.0));
  }
  CHECK_THROWS_AS(cheb_n(sp, "H", "L", 0), InputError);
}

TEST_CASE("multiset_count") {
  CHECK(multiset_count(3, 3) == doctest::Approx(10.0));
  CHECK(multiset_count(10, 5) == doctest::Approx(2002.0));
  CHECK(multiset_count(2, 2) == doctest::Approx(3.0));
}
