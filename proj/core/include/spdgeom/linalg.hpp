#pragma once

#include <Eigen/Dense>
#include <memory>

namespace spdgeom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative symmetry tolerance: |S_ij - S_ji| <= kSymRelTol * max|entry|.
inline constexpr double kSymRelTol = 1e-12;
/// SPD floor: eigenvalues must exceed kEigRelFloor * max(d_i).
inline constexpr double kEigRelFloor = 1e-12;

/// Sigma = P diag(d) P^T with orthogonal P. Eigenvalues sorted descending and
/// eigenvector signs fixed (largest-magnitude component positive, first index
/// on ties) so decompositions are reproducible.
struct EigenDecomposition {
  Matrix P;
  Vector d;
};

double max_abs(const Matrix& m);
bool is_symmetric(const Matrix& m, double rel_tol = kSymRelTol);
void require_symmetric(const Matrix& m, const char* what);
void require_square(const Matrix& m, const char* what);
void require_same_dim(const Matrix& a, const Matrix& b, const char* what);

/// Symmetric eigendecomposition with the deterministic conventions above.
/// Throws NotSymmetricError.
EigenDecomposition sym_eigendecompose(const Matrix& s);

/// Dense SPD matrix. The eigendecomposition is computed by the validating
/// constructor (positivity cannot be checked without it), cached once and
/// shared; instances are immutable and safe to copy across threads.
class SpdMatrix {
 public:
  explicit SpdMatrix(Matrix m);

  static SpdMatrix identity(Index n);
  static SpdMatrix from_diagonal(const Vector& d);

  const Matrix& matrix() const { return mat_; }
  Index dim() const { return mat_.rows(); }
  const EigenDecomposition& eig() const { return *eig_; }
  const Vector& eigenvalues() const { return eig_->d; }

 private:
  Matrix mat_;
  std::shared_ptr<const EigenDecomposition> eig_;
};

}  // namespace spdgeom
