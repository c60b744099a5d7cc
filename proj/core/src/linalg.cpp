#include "spdgeom/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "spdgeom/errors.hpp"

namespace spdgeom {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_symmetric(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double tol = rel_tol * std::max(max_abs(m), 1e-300);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    }
  }
  return true;
}

void require_symmetric(const Matrix& m, const char* what) {
  if (!is_symmetric(m)) {
    throw NotSymmetricError(std::string(what) + ": matrix is not symmetric");
  }
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatchError(std::string(what) + ": matrix is not square");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatchError(std::string(what) + ": dimension mismatch (" +
                                 std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                 " vs " + std::to_string(b.rows()) + "x" +
                                 std::to_string(b.cols()) + ")");
  }
}

EigenDecomposition sym_eigendecompose(const Matrix& s) {
  require_square(s, "sym_eigendecompose");
  require_symmetric(s, "sym_eigendecompose");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(s.selfadjointView<Eigen::Lower>());
  if (solver.info() != Eigen::Success) {
    throw Error("sym_eigendecompose: eigensolver did not converge");
  }

  const Index n = s.rows();
  EigenDecomposition out;
  out.P.resize(n, n);
  out.d.resize(n);
  // Eigen returns ascending order; flip to descending.
  for (Index k = 0; k < n; ++k) {
    out.d(k) = solver.eigenvalues()(n - 1 - k);
    out.P.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  // Sign convention: largest-magnitude component positive, first index wins ties.
  for (Index k = 0; k < n; ++k) {
    Index imax = 0;
    double amax = -1.0;
    for (Index i = 0; i < n; ++i) {
      const double a = std::abs(out.P(i, k));
      if (a > amax) {
        amax = a;
        imax = i;
      }
    }
    if (out.P(imax, k) < 0.0) out.P.col(k) = -out.P.col(k);
  }
  return out;
}

SpdMatrix::SpdMatrix(Matrix m) : mat_(std::move(m)) {
  auto eig = sym_eigendecompose(mat_);
  const double floor = kEigRelFloor * eig.d(0);
  const double d_min = eig.d(eig.d.size() - 1);
  if (!(d_min > floor)) {
    throw NotPositiveDefiniteError(
        "SpdMatrix: minimum eigenvalue " + std::to_string(d_min) +
        " is at or below the positivity floor " + std::to_string(floor));
  }
  eig_ = std::make_shared<const EigenDecomposition>(std::move(eig));
}

SpdMatrix SpdMatrix::identity(Index n) { return SpdMatrix(Matrix::Identity(n, n)); }

SpdMatrix SpdMatrix::from_diagonal(const Vector& d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  m.diagonal() = d;
  return SpdMatrix(std::move(m));
}

}  // namespace spdgeom
