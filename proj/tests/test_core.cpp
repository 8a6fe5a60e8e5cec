#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>
#include <cmath>

#include "rvz/errors.hpp"
#include "rvz/norms.hpp"
#include "rvz/rng.hpp"
#include "rvz/space.hpp"

using namespace rvz;

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

}  // namespace

TEST_CASE("kernel evaluation per norm variant") {
  CHECK(eval_kernel(NormSpec::lp(2.0), vec2(0, 0), vec2(3, 4)) == doctest::Approx(5.0));
  CHECK(eval_kernel(NormSpec::lp_metric(0.5), vec2(0, 0), vec2(1, 1)) == doctest::Approx(2.0));
  CHECK(eval_kernel(NormSpec::lp(0.5), vec2(0, 0), vec2(1, 1)) == doctest::Approx(4.0));
  CHECK(eval_kernel(NormSpec::sup(), vec2(1, -2), vec2(-1, 3)) == doctest::Approx(5.0));
  CHECK(eval_kernel(NormSpec::lp(1.0), vec2(1, 2), vec2(1, 2)) == 0.0);
}

TEST_CASE("kernel evaluation errors") {
  Eigen::VectorXd a(2), b(3);
  a.setZero();
  b.setZero();
  CHECK_THROWS_AS(eval_kernel(NormSpec::lp(2.0), a, b), InputError);
  CHECK_THROWS_AS(eval_kernel(NormSpec::explicit_matrix(), a, a), UnsupportedOperation);
  CHECK_THROWS_AS(NormSpec::lp(0.0), InputError);
  CHECK_THROWS_AS(NormSpec::lp(-1.0), InputError);
  CHECK_THROWS_AS(NormSpec::lp_metric(1.5), InputError);
}

TEST_CASE("norm spec parsing round-trips") {
  CHECK(parse_norm("lp:2").kind == NormKind::LpNorm);
  CHECK(parse_norm("lp:0.5").kind == NormKind::LpQuasiNorm);
  CHECK(parse_norm("lp_metric:0.5").kind == NormKind::LpMetric);
  CHECK(parse_norm("sup").kind == NormKind::SupNorm);
  CHECK(parse_norm("explicit").kind == NormKind::ExplicitMatrix);
  CHECK_THROWS_AS(parse_norm("nope"), InputError);
}

TEST_CASE("build_space basics") {
  const auto two = build_space({vec2(0, 0), vec2(1, 0)}, NormSpec::lp(2.0));
  CHECK(two.kernel()(0, 1) == doctest::Approx(1.0));
  CHECK(two.kernel()(0, 0) == 0.0);

  // equilateral side 1: all off-diagonals equal 1
  const auto tri =
      build_space({vec2(0, 0), vec2(1, 0), vec2(0.5, std::sqrt(3.0) / 2.0)}, NormSpec::lp(2.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(tri.kernel()(i, j) == doctest::Approx(i == j ? 0.0 : 1.0));

  Eigen::VectorXd p0(1), p1(1), p2(1);
  p0 << 0;
  p1 << 1;
  p2 << 2;
  const auto line = build_space({p0, p1, p2}, NormSpec::lp(1.0));
  Eigen::MatrixXd expect(3, 3);
  expect << 0, 1, 2, 1, 0, 1, 2, 1, 0;
  CHECK((line.kernel() - expect).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(build_space({}, NormSpec::lp(2.0)), InputError);
  Eigen::VectorXd q(3);
  q.setZero();
  CHECK_THROWS_AS(build_space({vec2(0, 0), q}, NormSpec::lp(2.0)), InputError);
}

TEST_CASE("kernel symmetry is bit-identical on constructed spaces") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.index(8));
    const int d = 1 + static_cast<int>(rng.index(4));
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd x(d);
      for (int k = 0; k < d; ++k) x[k] = rng.uniform(-2.0, 2.0);
      pts.push_back(x);
    }
    const auto sp = build_space(pts, NormSpec::lp(1.7));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(sp.kernel()(i, j) == sp.kernel()(j, i));
  }
}

TEST_CASE("explicit kernels: validation") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0, 1, 2, 0;
  CHECK_THROWS_AS(FiniteKernelSpace(bad, {}), InputError);
  Eigen::MatrixXd neg(2, 2);
  neg << 0, -1, -1, 0;
  CHECK_THROWS_AS(FiniteKernelSpace(neg, {}), InputError);
  Eigen::MatrixXd inf(2, 2);
  inf << 0, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0;
  CHECK_THROWS_AS(FiniteKernelSpace(inf, {}), InputError);
  // nonzero diagonal is legal for explicit kernels
  Eigen::MatrixXd diag(2, 2);
  diag << 0.5, 1, 1, 0.25;
  CHECK_NOTHROW(FiniteKernelSpace(diag, {}));
  // out-of-range subset index
  Eigen::MatrixXd ok(2, 2);
  ok << 0, 1, 1, 0;
  FiniteKernelSpace::Subsets sub;
  sub["H"] = {0, 2};
  CHECK_THROWS_AS(FiniteKernelSpace(ok, sub), InputError);
}

TEST_CASE("diameter") {
  Eigen::VectorXd p0(1), p1(1), p2(1);
  p0 << 0;
  p1 << 1;
  p2 << 2;
  FiniteKernelSpace::Subsets sub;
  sub["single"] = {1};
  auto sp = build_space({p0, p1, p2}, NormSpec::lp(1.0), sub);
  CHECK(diameter(sp, "H") == doctest::Approx(2.0));
  CHECK(diameter(sp, "single") == 0.0);
  CHECK_THROWS_AS(diameter(sp, "nope"), InputError);
}

TEST_CASE("triangle inequality property for metric variants") {
  Rng rng(42);
  for (const auto& spec : {NormSpec::lp(1.0), NormSpec::lp(2.0), NormSpec::lp(3.5),
                           NormSpec::sup(), NormSpec::lp_metric(0.5), NormSpec::lp_metric(0.8)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const int d = 1 + static_cast<int>(rng.index(5));
      Eigen::VectorXd x(d), y(d), z(d);
      for (int k = 0; k < d; ++k) {
        x[k] = rng.uniform(-3.0, 3.0);
        y[k] = rng.uniform(-3.0, 3.0);
        z[k] = rng.uniform(-3.0, 3.0);
      }
      const double xz = eval_kernel(spec, x, z);
      const double xy = eval_kernel(spec, x, y);
      const double yz = eval_kernel(spec, y, z);
      CHECK(xz <= xy + yz + 1e-12);
    }
  }
}

TEST_CASE("lp quasi-norm (p<1) violates the triangle inequality somewhere") {
  // e_1, 0, e_2 in the plane: ||e_1 - e_2|| = 2^(1/p) > 2 = ||e_1|| + ||e_2||.
  const NormSpec q = NormSpec::lp(0.5);
  const double direct = eval_kernel(q, vec2(1, 0), vec2(0, 1));
  const double through_zero =
      eval_kernel(q, vec2(1, 0), vec2(0, 0)) + eval_kernel(q, vec2(0, 0), vec2(0, 1));
  CHECK(direct > through_zero + 1e-9);
}

TEST_CASE("measure construction rules") {
  Eigen::VectorXd w(3);
  w << 0.5, 0.0, 0.5;
  const DiscreteMeasure mu({0, 1, 2}, w);
  CHECK(mu.support_size() == 2);  // zero weight dropped
  CHECK(mu.atoms()[0] == 0);
  CHECK(mu.atoms()[1] == 2);

  Eigen::VectorXd bad(2);
  bad << 0.5, 0.6;
  CHECK_THROWS_AS(DiscreteMeasure({0, 1}, bad), InputError);
  Eigen::VectorXd dup(2);
  dup << 0.5, 0.5;
  CHECK_THROWS_AS(DiscreteMeasure({3, 3}, dup), InputError);
  Eigen::VectorXd negw(2);
  negw << 1.5, -0.5;
  CHECK_THROWS_AS(DiscreteMeasure({0, 1}, negw), InputError);

  CHECK(DiscreteMeasure::uniform({4, 7, 9}).is_equal_weight());
}

TEST_CASE("interval convention") {
  CHECK(Interval(1.0, 2.0).empty == false);
  CHECK(Interval(2.0, 1.0).empty == true);
  CHECK(Interval::point(3.0).width() == 0.0);
  CHECK(Interval(0.0, 1.0).contains(0.5));
  CHECK(!Interval(0.0, 1.0).contains(1.5));
}

TEST_CASE("relabeling invariance of diameter") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng.index(6));
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd x(2);
      x << rng.uniform(), rng.uniform();
      pts.push_back(x);
    }
    auto sp = build_space(pts, NormSpec::lp(2.0));
    // reversed labels
    std::vector<Eigen::VectorXd> rev(pts.rbegin(), pts.rend());
    auto sp2 = build_space(rev, NormSpec::lp(2.0));
    CHECK(diameter(sp, "H") == diameter(sp2, "H"));  // bit-identical
  }
}
