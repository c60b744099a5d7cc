#include "spdgeom/univariate.hpp"

#include <cmath>
#include <vector>

#include "spdgeom/errors.hpp"

namespace spdgeom {

namespace {

Matrix to_eigenbasis(const EigenDecomposition& e, const Matrix& x) {
  return e.P.transpose() * x * e.P;
}

Matrix from_eigenbasis(const EigenDecomposition& e, const Matrix& xp) {
  return e.P * xp * e.P.transpose();
}

Matrix dd1_table(const ScalarFunction& f, const Vector& d) {
  const Index n = d.size();
  Matrix k(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      k(i, j) = k(j, i) = divided_diff_1(f, d(i), d(j));
    }
  }
  return k;
}

void check_tangent(const SpdMatrix& sigma, const Matrix& x, const char* what) {
  require_same_dim(sigma.matrix(), x, what);
  require_symmetric(x, what);
}

}  // namespace

Matrix univariate_apply(const ScalarFunction& f, const SpdMatrix& sigma) {
  const auto& e = sigma.eig();
  Vector fd(e.d.size());
  for (Index i = 0; i < e.d.size(); ++i) {
    fd(i) = f(e.d(i));
    if (!std::isfinite(fd(i))) {
      throw DomainError("univariate_apply: '" + f.name() +
                        "' is undefined at eigenvalue " + std::to_string(e.d(i)));
    }
  }
  return e.P * fd.asDiagonal() * e.P.transpose();
}

Matrix univariate_differential(const ScalarFunction& f, const SpdMatrix& sigma,
                               const Matrix& x) {
  check_tangent(sigma, x, "univariate_differential");
  const auto& e = sigma.eig();
  const Matrix k = dd1_table(f, e.d);
  const Matrix xp = to_eigenbasis(e, x);
  return from_eigenbasis(e, k.cwiseProduct(xp));
}

Matrix univariate_differential_inverse(const ScalarFunction& f, const SpdMatrix& sigma,
                                       const Matrix& w) {
  if (!f.is_diffeomorphism()) {
    throw NotDiffeomorphismError("univariate_differential_inverse: '" + f.name() +
                                 "' is not a diffeomorphism");
  }
  check_tangent(sigma, w, "univariate_differential_inverse");
  const auto& e = sigma.eig();
  const Matrix k = dd1_table(f, e.d);
  const Matrix wp = to_eigenbasis(e, w);
  return from_eigenbasis(e, wp.cwiseQuotient(k));
}

Matrix univariate_hessian(const ScalarFunction& f, const SpdMatrix& sigma,
                          const Matrix& x, const Matrix& y) {
  check_tangent(sigma, x, "univariate_hessian");
  check_tangent(sigma, y, "univariate_hessian");
  const auto& e = sigma.eig();
  const Index n = e.d.size();

  std::vector<double> dd2(static_cast<size_t>(n * n * n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      for (Index k = j; k < n; ++k) {
        const double v = divided_diff_2(f, e.d(i), e.d(j), e.d(k));
        // fully symmetric: fill all permutations
        const Index idx[3] = {i, j, k};
        Index p[3];
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
              if (a == b || b == c || a == c) continue;
              p[0] = idx[a], p[1] = idx[b], p[2] = idx[c];
              dd2[static_cast<size_t>((p[0] * n + p[1]) * n + p[2])] = v;
            }
      }
    }
  }

  const Matrix xp = to_eigenbasis(e, x);
  const Matrix yp = to_eigenbasis(e, y);
  Matrix h(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      double s = 0.0;
      for (Index k = 0; k < n; ++k) {
        s += dd2[static_cast<size_t>((i * n + j) * n + k)] *
             (xp(i, k) * yp(j, k) + xp(j, k) * yp(i, k));
      }
      h(i, j) = h(j, i) = s;
    }
  }
  return from_eigenbasis(e, h);
}

}  // namespace spdgeom
