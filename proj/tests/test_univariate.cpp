#include <doctest.h>

#include <cmath>
#include <vector>

#include "spdgeom/errors.hpp"
#include "test_support.hpp"

using namespace spdgeom;
using spdtest::rel_err;

TEST_CASE("apply: worked values") {
  CHECK(max_abs(univariate_apply(ScalarFunction::log(), SpdMatrix::identity(4))) < 1e-14);

  Vector d(2);
  d << 1.0, 4.0;
  const Matrix sq = univariate_apply(ScalarFunction::power(2.0), SpdMatrix::from_diagonal(d));
  CHECK(sq(0, 0) == doctest::Approx(1.0));
  CHECK(sq(1, 1) == doctest::Approx(16.0));
  CHECK(std::abs(sq(0, 1)) < 1e-14);

  // sqrt of [[2,1],[1,2]] via the 2x2 hand decomposition: eigenvalues 3, 1
  Matrix s(2, 2);
  s << 2.0, 1.0, 1.0, 2.0;
  const Matrix root = univariate_apply(ScalarFunction::power(0.5), SpdMatrix(s));
  const double a = 0.5 * (std::sqrt(3.0) + 1.0), b = 0.5 * (std::sqrt(3.0) - 1.0);
  CHECK(root(0, 0) == doctest::Approx(a).epsilon(1e-12));
  CHECK(root(0, 1) == doctest::Approx(b).epsilon(1e-12));
  CHECK((root * root - s).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("apply: domain guard") {
  Vector d(2);
  d << 2.0, 1.0;
  const auto sigma = SpdMatrix::from_diagonal(d);
  const ScalarFunction bad(
      "log(x-1)", [](double x) { return std::log(x - 1.0); },
      [](double x) { return 1.0 / (x - 1.0); },
      [](double x) { return -1.0 / ((x - 1.0) * (x - 1.0)); }, false);
  CHECK_THROWS_AS(univariate_apply(bad, sigma), DomainError);
}

TEST_CASE("differential: worked values") {
  SplitMix64 rng(29);
  const Matrix x = spdtest::random_symmetric(rng, 3);

  // at the identity: f'(1) X exactly
  const auto expm1 = spdtest::expm1_fn();
  const Matrix at_id = univariate_differential(expm1, SpdMatrix::identity(3), x);
  CHECK((at_id - std::exp(1.0) * x).cwiseAbs().maxCoeff() < 1e-12);

  // pow2 at diag(d1, d2): entrywise multiply by [[2d1, d1+d2], [d1+d2, 2d2]]
  Vector d(2);
  d << 3.0, 0.5;
  Matrix x2(2, 2);
  x2 << 1.0, -2.0, -2.0, 4.0;
  const Matrix got =
      univariate_differential(ScalarFunction::power(2.0), SpdMatrix::from_diagonal(d), x2);
  CHECK(got(0, 0) == doctest::Approx(2.0 * 3.0 * 1.0));
  CHECK(got(0, 1) == doctest::Approx((3.0 + 0.5) * -2.0));
  CHECK(got(1, 1) == doctest::Approx(2.0 * 0.5 * 4.0));

  // log at diag(1,2), X = E12 + E21: coefficient (ln 1 - ln 2)/(1 - 2) = ln 2
  Vector d12(2);
  d12 << 1.0, 2.0;
  Matrix e12(2, 2);
  e12 << 0.0, 1.0, 1.0, 0.0;
  const Matrix gl =
      univariate_differential(ScalarFunction::log(), SpdMatrix::from_diagonal(d12), e12);
  CHECK(gl(0, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(std::abs(gl(0, 0)) < 1e-14);
}

TEST_CASE("differential and hessian are O(n)-equivariant") {
  SplitMix64 rng(31);
  const auto logf = ScalarFunction::log();
  for (int k = 0; k < 50; ++k) {
    const Index n = 3;
    const SpdMatrix sigma = spdtest::random_spd(rng, n);
    const Matrix x = spdtest::random_symmetric(rng, n);
    const Matrix y = spdtest::random_symmetric(rng, n);
    const Matrix r = spdtest::random_orthogonal(rng, n);
    const SpdMatrix sigma_r(r * sigma.matrix() * r.transpose());

    const Matrix fa = univariate_apply(logf, sigma);
    const Matrix fb = univariate_apply(logf, sigma_r);
    CHECK((fb - r * fa * r.transpose()).cwiseAbs().maxCoeff() <=
          1e-9 * (1.0 + max_abs(fa)));

    const Matrix da = univariate_differential(logf, sigma, x);
    const Matrix db = univariate_differential(logf, sigma_r, r * x * r.transpose());
    CHECK((db - r * da * r.transpose()).cwiseAbs().maxCoeff() <=
          1e-9 * (1.0 + max_abs(da)));

    const Matrix ha = univariate_hessian(logf, sigma, x, y);
    const Matrix hb = univariate_hessian(logf, sigma_r, r * x * r.transpose(),
                                         r * y * r.transpose());
    CHECK((hb - r * ha * r.transpose()).cwiseAbs().maxCoeff() <=
          1e-9 * (1.0 + max_abs(ha)));
  }
}

TEST_CASE("differential inverse: worked values and round trips") {
  SplitMix64 rng(37);
  const Matrix w = spdtest::random_symmetric(rng, 3);

  const Matrix id_back =
      univariate_differential_inverse(ScalarFunction::identity(), spdtest::random_spd(rng, 3), w);
  CHECK((id_back - w).cwiseAbs().maxCoeff() < 1e-12);

  const auto expm1 = spdtest::expm1_fn();
  const Matrix at_id =
      univariate_differential_inverse(expm1, SpdMatrix::identity(3), w);
  CHECK((at_id - w / std::exp(1.0)).cwiseAbs().maxCoeff() < 1e-12);

  // pow2 at diag(1,3), W = ones: divide by [[2,4],[4,6]]
  Vector d(2);
  d << 1.0, 3.0;
  const Matrix ones = Matrix::Ones(2, 2);
  const Matrix got = univariate_differential_inverse(ScalarFunction::power(2.0),
                                                     SpdMatrix::from_diagonal(d), ones);
  CHECK(got(0, 0) == doctest::Approx(0.5));
  CHECK(got(0, 1) == doctest::Approx(0.25));
  CHECK(got(1, 1) == doctest::Approx(1.0 / 6.0));

  // round trip for the required function set
  const std::vector<ScalarFunction> fns = {ScalarFunction::power(-1.0),
                                           ScalarFunction::power(0.5),
                                           ScalarFunction::identity(),
                                           ScalarFunction::power(2.0),
                                           ScalarFunction::log(),
                                           expm1};
  for (const auto& f : fns) {
    for (int k = 0; k < 10; ++k) {
      const SpdMatrix sigma = spdtest::random_spd(rng, 3);
      const Matrix x = spdtest::random_symmetric(rng, 3);
      const Matrix back =
          univariate_differential_inverse(f, sigma, univariate_differential(f, sigma, x));
      CHECK((back - x).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + max_abs(x)));
    }
  }

  const ScalarFunction not_diffeo(
      "x^2-ish", [](double x) { return x * x; }, [](double x) { return 2.0 * x; },
      [](double) { return 2.0; }, false);
  CHECK_THROWS_AS(
      univariate_differential_inverse(not_diffeo, SpdMatrix::identity(2), Matrix::Identity(2, 2)),
      NotDiffeomorphismError);
}

TEST_CASE("hessian: worked values") {
  SplitMix64 rng(41);
  const SpdMatrix sigma = spdtest::random_spd(rng, 3);
  const Matrix x = spdtest::random_symmetric(rng, 3);
  const Matrix y = spdtest::random_symmetric(rng, 3);

  // pow2: H(X, Y) = XY + YX for every base point
  const Matrix h2 = univariate_hessian(ScalarFunction::power(2.0), sigma, x, y);
  CHECK((h2 - (x * y + y * x)).cwiseAbs().maxCoeff() <= 1e-11 * (1.0 + max_abs(h2)));

  // identity: zero
  CHECK(max_abs(univariate_hessian(ScalarFunction::identity(), sigma, x, y)) < 1e-13);

  // log at I with X = Y = I: -I
  const Matrix hl = univariate_hessian(ScalarFunction::log(), SpdMatrix::identity(3),
                                       Matrix::Identity(3, 3), Matrix::Identity(3, 3));
  CHECK((hl + Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("hessian: bilinearity, symmetry and finite-difference consistency") {
  SplitMix64 rng(43);
  const auto logf = ScalarFunction::log();
  for (int k = 0; k < 10; ++k) {
    const SpdMatrix sigma = spdtest::random_spd(rng, 3, 0.7);
    const Matrix x = spdtest::random_symmetric(rng, 3);
    const Matrix y = spdtest::random_symmetric(rng, 3);

    const Matrix hxy = univariate_hessian(logf, sigma, x, y);
    const Matrix hyx = univariate_hessian(logf, sigma, y, x);
    CHECK((hxy - hyx).cwiseAbs().maxCoeff() == 0.0);  // symmetric by construction

    const double a = rng.normal(), b = rng.normal();
    const Matrix lin = univariate_hessian(logf, sigma, a * x + b * y, y);
    const Matrix expect = a * univariate_hessian(logf, sigma, x, y) +
                          b * univariate_hessian(logf, sigma, y, y);
    CHECK((lin - expect).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + max_abs(expect)));

    // H(X, Y) ~ (d_{S+hY} f(X) - d_{S-hY} f(X)) / 2h
    const double h = 1e-4;
    const SpdMatrix sp(sigma.matrix() + h * y);
    const SpdMatrix sm(sigma.matrix() - h * y);
    const Matrix fd = (univariate_differential(logf, sp, x) -
                       univariate_differential(logf, sm, x)) /
                      (2.0 * h);
    CHECK((hxy - fd).cwiseAbs().maxCoeff() <= 1e-5 * x.norm() * y.norm());
  }
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(univariate_differential(ScalarFunction::log(), SpdMatrix::identity(3),
                                          Matrix::Identity(2, 2)),
                  DimensionMismatchError);
}
