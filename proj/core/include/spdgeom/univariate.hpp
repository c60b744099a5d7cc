#pragma once

#include "spdgeom/divided_differences.hpp"
#include "spdgeom/linalg.hpp"
#include "spdgeom/scalar_function.hpp"

namespace spdgeom {

/// f(Sigma) = P diag(f(d_i)) P^T. Throws DomainError if f is non-finite at an
/// eigenvalue.
Matrix univariate_apply(const ScalarFunction& f, const SpdMatrix& sigma);

/// Differential d_Sigma f(X): entry (i, j) in the eigenbasis is
/// f^[1](d_i, d_j) X'_ij.
Matrix univariate_differential(const ScalarFunction& f, const SpdMatrix& sigma,
                               const Matrix& x);

/// Inverse of the differential: eigenbasis entries divided by f^[1](d_i, d_j).
/// Requires f to be a diffeomorphism (so f^[1] never vanishes).
Matrix univariate_differential_inverse(const ScalarFunction& f, const SpdMatrix& sigma,
                                       const Matrix& w);

/// Hessian H_Sigma f(X, Y): entry (i, j) in the eigenbasis is
/// sum_k f^[2](d_i, d_j, d_k) (X'_ik Y'_jk + X'_jk Y'_ik).
Matrix univariate_hessian(const ScalarFunction& f, const SpdMatrix& sigma,
                          const Matrix& x, const Matrix& y);

}  // namespace spdgeom
