#include <doctest.h>

#include <cmath>

#include "spdgeom/deformed.hpp"
#include "spdgeom/errors.hpp"
#include "test_support.hpp"

using namespace spdgeom;
using spdtest::rel_err;

TEST_CASE("builtin kernel values from the catalog") {
  const auto catalog = builtin_kernels();
  REQUIRE(catalog.size() == 5);

  const auto& affine = *find_builtin("affine-invariant");
  CHECK(affine.kernel(2.0, 3.0) == doctest::Approx(6.0));

  const auto& bw = *find_builtin("bures-wasserstein");
  CHECK(bw.kernel(1.0, 1.0) == doctest::Approx(4.0));
  CHECK(bw.coefficient == 4.0);
  CHECK(bw.power == 1.0);

  const auto& le = *find_builtin("log-euclidean");
  for (double x : {0.2, 1.0, 17.0}) {
    CHECK(rel_err(le.kernel(x, x), x * x) < 1e-12);
  }
  CHECK(find_builtin("bkm") != nullptr);
  CHECK(find_builtin("no-such-metric") == nullptr);
}

TEST_CASE("kernel symmetry and positivity on a sample grid") {
  for (const auto& spec : builtin_kernels()) {
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        const double x = std::pow(10.0, -3.0 + 6.0 * i / 49.0);
        const double y = std::pow(10.0, -3.0 + 6.0 * j / 49.0);
        const double pxy = spec.kernel(x, y);
        CHECK(pxy > 0.0);
        CHECK(std::abs(pxy - spec.kernel(y, x)) <= 1e-12 * pxy);
        // the catalog decomposition reproduces the kernel
        CHECK(rel_err(pxy, spec.coefficient * std::pow(spec.mean(x, y), spec.power)) <
              1e-10);
      }
    }
  }
}

TEST_CASE("kernel metric eval: worked values") {
  SplitMix64 rng(53);
  const auto& eu = find_builtin("euclidean")->kernel;
  const SpdMatrix sigma = spdtest::random_spd(rng, 3);
  const Matrix x = spdtest::random_symmetric(rng, 3);
  const Matrix y = spdtest::random_symmetric(rng, 3);
  CHECK(rel_err(kernel_metric_eval(eu, sigma, x, y), (x * y).trace()) < 1e-12);

  const auto& affine = find_builtin("affine-invariant")->kernel;
  CHECK(rel_err(kernel_metric_eval(affine, SpdMatrix::identity(3), x, y),
                (x * y).trace()) < 1e-12);

  const auto& bw = find_builtin("bures-wasserstein")->kernel;
  CHECK(rel_err(kernel_metric_eval(bw, SpdMatrix::identity(3), x, x),
                0.25 * (x * x).trace()) < 1e-12);
}

TEST_CASE("kernel metric eval is O(n)-invariant") {
  SplitMix64 rng(59);
  for (const auto& spec : builtin_kernels()) {
    for (int k = 0; k < 10; ++k) {
      const SpdMatrix sigma = spdtest::random_spd(rng, 3);
      const Matrix x = spdtest::random_symmetric(rng, 3);
      const Matrix y = spdtest::random_symmetric(rng, 3);
      const Matrix r = spdtest::random_orthogonal(rng, 3);
      const double base = kernel_metric_eval(spec.kernel, sigma, x, y);
      const double conj = kernel_metric_eval(
          spec.kernel, SpdMatrix(r * sigma.matrix() * r.transpose()),
          r * x * r.transpose(), r * y * r.transpose());
      CHECK(rel_err(base, conj) < 1e-9);
    }
  }
}

TEST_CASE("Table 1 kernels reproduce the direct trace formulas") {
  SplitMix64 rng(61);
  const auto logf = ScalarFunction::log();
  for (int k = 0; k < 100; ++k) {
    const auto d = spdtest::random_positive_diag(rng, 3, 1.0);
    const SpdMatrix sigma = SpdMatrix::from_diagonal(d);
    const Matrix x = spdtest::random_symmetric(rng, 3);
    const Matrix y = spdtest::random_symmetric(rng, 3);

    const double eu = kernel_metric_eval(find_builtin("euclidean")->kernel, sigma, x, y);
    CHECK(rel_err(eu, (x * y).trace()) < 1e-9);

    const Matrix dlx = univariate_differential(logf, sigma, x);
    const Matrix dly = univariate_differential(logf, sigma, y);
    const double le =
        kernel_metric_eval(find_builtin("log-euclidean")->kernel, sigma, x, y);
    CHECK(rel_err(le, (dlx * dly).trace()) < 1e-9);

    const Matrix inv = sigma.matrix().inverse();
    const double ai =
        kernel_metric_eval(find_builtin("affine-invariant")->kernel, sigma, x, y);
    CHECK(rel_err(ai, (inv * x * inv * y).trace()) < 1e-9);

    const Matrix sx = sylvester_solve(sigma, x);
    const Matrix sy = sylvester_solve(sigma, y);
    const double bw =
        kernel_metric_eval(find_builtin("bures-wasserstein")->kernel, sigma, x, y);
    CHECK(rel_err(bw, (sigma.matrix() * sx * sy).trace()) < 1e-9);

    const double bkm =
        kernel_metric_eval(find_builtin("bogoliubov-kubo-mori")->kernel, sigma, x, y);
    CHECK(rel_err(bkm, (dlx * y).trace()) < 1e-9);
  }
}

TEST_CASE("cometric rule") {
  const auto& affine = find_builtin("affine-invariant")->kernel;
  const auto co = cometric_kernel(affine);
  CHECK(co(2.0, 3.0) == doctest::Approx(1.0 / 6.0));

  const auto& eu = find_builtin("euclidean")->kernel;
  const auto co_eu = cometric_kernel(eu);
  CHECK(co_eu(0.3, 17.0) == doctest::Approx(1.0));

  const auto back = cometric_kernel(cometric_kernel(affine));
  for (int i = 0; i < 20; ++i) {
    const double x = std::pow(10.0, -3.0 + 6.0 * i / 19.0);
    const double y = std::pow(10.0, 3.0 - 6.0 * i / 19.0);
    CHECK(rel_err(back(x, y), affine(x, y)) < 1e-15);
  }
}

TEST_CASE("completeness criterion theta == 2") {
  CHECK(completeness_of(*find_builtin("affine-invariant")));
  CHECK(completeness_of(*find_builtin("log-euclidean")));
  CHECK_FALSE(completeness_of(*find_builtin("bures-wasserstein")));
  CHECK_FALSE(completeness_of(*find_builtin("euclidean")));
  CHECK_FALSE(completeness_of(*find_builtin("bogoliubov-kubo-mori")));
}
