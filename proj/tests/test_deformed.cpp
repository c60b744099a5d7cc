#include <doctest.h>

#include <cmath>

#include "spdgeom/deformed.hpp"
#include "spdgeom/errors.hpp"
#include "spdgeom/mean_kernel.hpp"
#include "test_support.hpp"

using namespace spdgeom;
using spdtest::rel_err;

TEST_CASE("deform_metric: pullback contract") {
  SplitMix64 rng(71);
  const auto bases = {MetricHandle::euclidean(), MetricHandle::bures_wasserstein()};
  const auto fns = {ScalarFunction::log(), ScalarFunction::power(0.5),
                    ScalarFunction::power(-1.0), spdtest::expm1_fn()};
  for (const auto& base : bases) {
    for (const auto& f : fns) {
      const auto pulled = deform_metric(base, f);
      for (int k = 0; k < 10; ++k) {
        const SpdMatrix sigma = spdtest::random_spd(rng, 3);
        const Matrix x = spdtest::random_symmetric(rng, 3);
        const Matrix y = spdtest::random_symmetric(rng, 3);
        const double lhs = pulled.eval(sigma, x, y);
        const double rhs = base.eval(SpdMatrix(univariate_apply(f, sigma)),
                                     univariate_differential(f, sigma, x),
                                     univariate_differential(f, sigma, y));
        CHECK(rel_err(lhs, rhs) < 1e-10);
      }
    }
  }
}

TEST_CASE("deform_metric: identity leaves Euclidean unchanged, log gives log-Euclidean") {
  SplitMix64 rng(73);
  const auto eu = MetricHandle::euclidean();
  const auto same = deform_metric(eu, ScalarFunction::identity());
  const auto log_e = deform_metric(eu, ScalarFunction::log());
  const auto logf = ScalarFunction::log();
  for (int k = 0; k < 20; ++k) {
    const SpdMatrix sigma = spdtest::random_spd(rng, 3);
    const Matrix x = spdtest::random_symmetric(rng, 3);
    CHECK(rel_err(same.eval(sigma, x, x), (x * x).trace()) < 1e-12);
    const Matrix dl = univariate_differential(logf, sigma, x);
    CHECK(rel_err(log_e.eval(sigma, x, x), (dl * dl).trace()) < 1e-10);
  }
  CHECK_THROWS_AS(deform_metric(eu, ScalarFunction("notdiffeo", [](double x) { return x; },
                                                   [](double) { return 1.0; },
                                                   [](double) { return 0.0; }, false)),
                  NotDiffeomorphismError);
}

TEST_CASE("power-Wasserstein handle carries the expected kernel") {
  for (double p : {-1.0, 0.5, 1.7}) {
    const auto handle = MetricHandle::power_wasserstein(p);
    const auto spec = power_wasserstein_mean(p);
    const auto eff = handle.effective_kernel();
    for (double x : {0.3, 1.0, 4.0}) {
      for (double y : {0.7, 5.0}) {
        CHECK(rel_err(eff(x, y), spec.kernel(x, y)) < 1e-10);
      }
    }
  }
}

TEST_CASE("pulled-back kernel matches direct pullback evaluation at diagonal points") {
  SplitMix64 rng(79);
  const auto base = MetricHandle::bures_wasserstein();
  const auto f = ScalarFunction::power(0.5);
  const auto pulled = deform_metric(base, f);
  for (int k = 0; k < 20; ++k) {
    const SpdMatrix sigma = SpdMatrix::from_diagonal(spdtest::random_positive_diag(rng, 3));
    const Matrix x = spdtest::random_symmetric(rng, 3);
    const double via_kernel = kernel_metric_eval(pulled.kernel(), sigma, x, x);
    const double direct = base.eval(SpdMatrix(univariate_apply(f, sigma)),
                                    univariate_differential(f, sigma, x),
                                    univariate_differential(f, sigma, x));
    CHECK(rel_err(via_kernel, direct) < 1e-10);
  }
}

TEST_CASE("deformed distance: worked values") {
  // log-Euclidean: d(I, e I) = ||I||_F = sqrt(2) in dimension 2
  const auto le = MetricHandle::log_euclidean();
  const SpdMatrix id2 = SpdMatrix::identity(2);
  const SpdMatrix e_id(std::exp(1.0) * Matrix::Identity(2, 2));
  CHECK(rel_err(deformed_distance(le, id2, e_id), std::sqrt(2.0)) < 1e-12);
  CHECK(deformed_distance(le, e_id, e_id) == 0.0);
  CHECK(rel_err(deformed_distance(le, id2, e_id), deformed_distance(le, e_id, id2)) <
        1e-15);

  Vector one(1), three(1);
  one << 1.0;
  three << 3.0;
  const auto pe1 = MetricHandle::power_euclidean(1.0);
  CHECK(rel_err(deformed_distance(pe1, SpdMatrix::from_diagonal(one),
                                  SpdMatrix::from_diagonal(three)),
                2.0) < 1e-12);

  CHECK_THROWS_AS(deformed_distance(MetricHandle::bures_wasserstein(), id2, e_id),
                  UnsupportedBaseError);
}

TEST_CASE("deformed geodesics: worked values") {
  SplitMix64 rng(83);

  // identity deformation: straight line
  const auto eu = MetricHandle::euclidean();
  const SpdMatrix s = spdtest::random_spd(rng, 3, 0.5);
  const Matrix x = spdtest::random_symmetric(rng, 3);
  const auto line = deformed_geodesic(eu, s, x);
  const double t_ok = std::min(1.0, 0.5 * line.t_max());
  CHECK((line(t_ok).matrix() - (s.matrix() + t_ok * x)).cwiseAbs().maxCoeff() < 1e-10);

  // log deformation at the identity: exp(tX)
  const auto le = MetricHandle::log_euclidean();
  const auto curve = deformed_geodesic(le, SpdMatrix::identity(3), x);
  CHECK(curve.t_min() == -std::numeric_limits<double>::infinity());
  CHECK(curve.t_max() == std::numeric_limits<double>::infinity());
  const Matrix expected = univariate_apply(
      ScalarFunction::log().is_diffeomorphism()
          ? ScalarFunction("exp", [](double t) { return std::exp(t); },
                           [](double t) { return std::exp(t); },
                           [](double t) { return std::exp(t); }, true)
          : ScalarFunction::identity(),
      SpdMatrix(Matrix::Identity(3, 3) + 0.0 * x));
  (void)expected;
  // direct check against the matrix exponential through the eigenbasis of X
  const auto ex = sym_eigendecompose(x);
  Vector lam(3);
  for (Index i = 0; i < 3; ++i) lam(i) = std::exp(0.7 * ex.d(i));
  const Matrix exp_07x = ex.P * lam.asDiagonal() * ex.P.transpose();
  CHECK((curve(0.7).matrix() - exp_07x).cwiseAbs().maxCoeff() < 1e-10);

  // 1x1 square-root deformation: gamma(t) = (2 + t)^2 from Sigma = 4, X = 4
  Vector four(1);
  four << 4.0;
  const auto sqrt_e = MetricHandle::deformed_euclidean(ScalarFunction::power(0.5));
  const auto curve1 = deformed_geodesic(sqrt_e, SpdMatrix::from_diagonal(four),
                                        Matrix::Constant(1, 1, 4.0));
  CHECK(curve1(0.0).matrix()(0, 0) == doctest::Approx(4.0));
  CHECK(curve1(1.0).matrix()(0, 0) == doctest::Approx(9.0));
  CHECK(curve1(-1.5).matrix()(0, 0) == doctest::Approx(0.25));
  // gamma'(0) = X by finite differences
  const double h = 1e-6;
  const double deriv = (curve1(h).matrix()(0, 0) - curve1(-h).matrix()(0, 0)) / (2.0 * h);
  CHECK(std::abs(deriv - 4.0) < 1e-6);
  // domain boundary: u(Sigma) + t W = 2 + t hits 0 at t = -2
  CHECK(curve1.t_min() == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK_THROWS_AS(curve1(-2.5), DomainExitError);
}

TEST_CASE("geodesic initial velocity matches X on random inputs") {
  SplitMix64 rng(89);
  for (const auto& handle :
       {MetricHandle::log_euclidean(), MetricHandle::power_euclidean(0.5),
        MetricHandle::power_euclidean(-1.0)}) {
    for (int k = 0; k < 5; ++k) {
      const SpdMatrix sigma = spdtest::random_spd(rng, 3, 0.5);
      const Matrix x = spdtest::random_symmetric(rng, 3);
      const auto curve = deformed_geodesic(handle, sigma, x);
      const double h = 1e-5;
      const Matrix fd = (curve(h).matrix() - curve(-h).matrix()) / (2.0 * h);
      CHECK((fd - x).cwiseAbs().maxCoeff() <= 1e-6 * (1.0 + max_abs(x)));
    }
  }
}

TEST_CASE("geodesic of the deformed metric is straight after mapping") {
  SplitMix64 rng(97);
  const auto handle = MetricHandle::power_euclidean(0.5);
  const auto& u = *handle.deformation();
  const SpdMatrix sigma = spdtest::random_spd(rng, 3, 0.4);
  const Matrix x = spdtest::random_symmetric(rng, 3);
  const auto curve = deformed_geodesic(handle, sigma, x);
  const double h = 0.05;
  for (int i = 1; i <= 10; ++i) {
    const double t = -0.25 + 0.05 * i;
    const Matrix second = (univariate_apply(u, curve(t + h)) -
                           2.0 * univariate_apply(u, curve(t)) +
                           univariate_apply(u, curve(t - h))) /
                          (h * h);
    CHECK(max_abs(second) <= 1e-5 * x.norm() * x.norm());
  }
}

TEST_CASE("deformed log: worked values and Exp/Log consistency") {
  SplitMix64 rng(101);
  const auto le = MetricHandle::log_euclidean();

  const SpdMatrix sigma0 = spdtest::random_spd(rng, 3);
  CHECK(max_abs(deformed_log(le, sigma0, sigma0)) < 1e-12);

  const auto eu = MetricHandle::euclidean();
  const SpdMatrix lam0 = spdtest::random_spd(rng, 3);
  CHECK((deformed_log(eu, sigma0, lam0) - (lam0.matrix() - sigma0.matrix()))
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // f = log at the identity: Log_I(Lambda) = log(Lambda)
  const Matrix l = deformed_log(le, SpdMatrix::identity(3), lam0);
  CHECK((l - univariate_apply(ScalarFunction::log(), lam0)).cwiseAbs().maxCoeff() < 1e-11);

  for (const auto& handle :
       {MetricHandle::log_euclidean(), MetricHandle::power_euclidean(2.0),
        MetricHandle::power_euclidean(-0.5)}) {
    for (int k = 0; k < 100; ++k) {
      const SpdMatrix sigma = spdtest::random_spd(rng, 3, 0.7);
      const SpdMatrix lam = spdtest::random_spd(rng, 3, 0.7);
      const Matrix v = deformed_log(handle, sigma, lam);
      const auto curve = deformed_geodesic(handle, sigma, v);
      CHECK((curve(1.0).matrix() - lam.matrix()).cwiseAbs().maxCoeff() <=
            1e-9 * (1.0 + max_abs(lam.matrix())));
      // endpoint distance agrees with the metric norm of the log
      const double dist = deformed_distance(handle, sigma, lam);
      const double norm2 = handle.eval(sigma, v, v);
      CHECK(rel_err(dist * dist, norm2) < 1e-9);
    }
  }
}

TEST_CASE("parallel transport: worked values and isometry") {
  SplitMix64 rng(103);
  const auto eu = MetricHandle::euclidean();
  const SpdMatrix s1 = spdtest::random_spd(rng, 3);
  const SpdMatrix s2 = spdtest::random_spd(rng, 3);
  const Matrix x = spdtest::random_symmetric(rng, 3);
  CHECK((deformed_parallel_transport(eu, s1, s2, x) - x).cwiseAbs().maxCoeff() < 1e-12);

  const auto pe2 = MetricHandle::power_euclidean(2.0);
  CHECK((deformed_parallel_transport(pe2, s1, s1, x) - x).cwiseAbs().maxCoeff() < 1e-11);

  // pow2 from I to diag(1,3) on the all-ones tangent: [[1, 1/2], [1/2, 1/3]]
  Vector d(2);
  d << 1.0, 3.0;
  const Matrix moved = deformed_parallel_transport(
      pe2, SpdMatrix::identity(2), SpdMatrix::from_diagonal(d), Matrix::Ones(2, 2));
  CHECK(moved(0, 0) == doctest::Approx(1.0));
  CHECK(moved(0, 1) == doctest::Approx(0.5));
  CHECK(moved(1, 1) == doctest::Approx(1.0 / 3.0));

  for (const auto& handle :
       {MetricHandle::log_euclidean(), MetricHandle::power_euclidean(0.5),
        MetricHandle::deformed_euclidean(spdtest::expm1_fn())}) {
    for (int k = 0; k < 100; ++k) {
      const SpdMatrix a = spdtest::random_spd(rng, 3, 0.7);
      const SpdMatrix b = spdtest::random_spd(rng, 3, 0.7);
      const Matrix v = spdtest::random_symmetric(rng, 3);
      const Matrix w = deformed_parallel_transport(handle, a, b, v);
      CHECK(rel_err(handle.eval(a, v, v), handle.eval(b, w, w)) < 1e-9);
    }
  }
}

TEST_CASE("sylvester solver") {
  SplitMix64 rng(107);
  const Matrix x = spdtest::random_symmetric(rng, 3);
  const Matrix half = sylvester_solve(SpdMatrix::identity(3), x);
  CHECK((half - 0.5 * x).cwiseAbs().maxCoeff() < 1e-13);

  Vector d(2);
  d << 1.0, 3.0;
  const Matrix s = sylvester_solve(SpdMatrix::from_diagonal(d), Matrix::Ones(2, 2));
  CHECK(s(0, 0) == doctest::Approx(0.5));
  CHECK(s(0, 1) == doctest::Approx(0.25));
  CHECK(s(1, 1) == doctest::Approx(1.0 / 6.0));

  for (int k = 0; k < 20; ++k) {
    const SpdMatrix sigma = spdtest::random_spd(rng, 4, 1.0);
    const Matrix rhs = spdtest::random_symmetric(rng, 4);
    const Matrix sol = sylvester_solve(sigma, rhs);
    const Matrix resid = sigma.matrix() * sol + sol * sigma.matrix() - rhs;
    CHECK(max_abs(resid) <= 1e-9 * rhs.norm());
  }
}

TEST_CASE("power family limit: convergence to the log-Euclidean form") {
  Vector d(2);
  d << 1.0, 2.0;
  const SpdMatrix sigma = SpdMatrix::from_diagonal(d);
  const Matrix x = Matrix::Identity(2, 2);

  const auto res = power_family_limit_check(MetricHandle::euclidean(), sigma, x,
                                            {1.0, 0.5, 0.1, 0.05, 0.01});
  const Matrix dl = univariate_differential(ScalarFunction::log(), sigma, x);
  CHECK(rel_err(res.limit_value, (dl * dl).trace()) < 1e-12);
  for (size_t i = 1; i < res.rows.size(); ++i) {
    CHECK(res.rows[i].abs_error < res.rows[i - 1].abs_error);
  }
  CHECK(res.rows.back().abs_error < 1e-2 * res.rows.front().abs_error);
  CHECK(res.observed_rate == doctest::Approx(1.0).epsilon(0.35));

  // at the identity every power metric agrees with the limit
  const auto at_id = power_family_limit_check(MetricHandle::euclidean(),
                                              SpdMatrix::identity(2), x, {1.0, 0.1});
  for (const auto& row : at_id.rows) {
    CHECK(rel_err(row.value, at_id.limit_value) < 1e-12);
  }
  CHECK(std::isnan(at_id.observed_rate));

  // Bures-Wasserstein base at the identity: limit is one quarter of tr(dlog X ^2)
  const auto bw = power_family_limit_check(MetricHandle::bures_wasserstein(),
                                           SpdMatrix::identity(2), x, {0.5, 0.1, 0.02});
  CHECK(rel_err(bw.limit_value, 0.25 * (x * x).trace()) < 1e-12);
  CHECK(bw.rows.back().abs_error <= 1e-10);
}
