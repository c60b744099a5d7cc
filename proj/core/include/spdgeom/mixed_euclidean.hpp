#pragma once

#include <optional>
#include <vector>

#include "spdgeom/deformed.hpp"
#include "spdgeom/kernel_metrics.hpp"
#include "spdgeom/linalg.hpp"
#include "spdgeom/scalar_function.hpp"

namespace spdgeom {

/// Relative Frobenius tolerance for the commuting-case guards.
inline constexpr double kCommuteRelTol = 1e-10;
/// Relative floor for the sectional-curvature denominator.
inline constexpr double kSecDenomRelFloor = 1e-12;

/// (alpha, beta) with the convention F_alpha = pow_alpha (alpha != 0), F_0 = log.
struct MpePair {
  double alpha;
  double beta;

  double alpha0() const { return 0.5 * (alpha + beta); }
  ScalarFunction u() const { return ScalarFunction::power_or_log(alpha); }
  ScalarFunction v() const { return ScalarFunction::power_or_log(beta); }
};

/// Balanced metric of the u- and v-deformed Euclidean metrics:
///   g_Sigma(X, Y) = (1/(u'(1) v'(1))) sum_ij u^[1](d_i,d_j) v^[1](d_i,d_j) X'_ij Y'_ij.
class MixedEuclideanMetric {
 public:
  MixedEuclideanMetric(ScalarFunction u, ScalarFunction v);

  static MixedEuclideanMetric mpe(double alpha, double beta);

  const ScalarFunction& u() const { return u_; }
  const ScalarFunction& v() const { return v_; }
  double normalizer() const { return normalizer_; }  ///< 1/(u'(1) v'(1))
  const std::optional<MpePair>& mpe_pair() const { return pair_; }

 private:
  ScalarFunction u_, v_;
  double normalizer_;
  std::optional<MpePair> pair_;
};

/// Frobenius pairing of the two flat parallel transports to the identity:
/// <Pi+_{Sigma->I} X, Pi-_{Sigma->I} Y>. Agrees with me_metric_eval; the two
/// routes are kept independent.
double balanced_form(const ScalarFunction& u, const ScalarFunction& v,
                     const SpdMatrix& sigma, const Matrix& x, const Matrix& y);

double me_metric_eval(const MixedEuclideanMetric& m, const SpdMatrix& sigma,
                      const Matrix& x, const Matrix& y);

/// Kernel of the balanced metric:
/// phi(x,y) = (u'(1)/u^[1](x,y)) * (v'(1)/v^[1](x,y)), the geometric mean of
/// the two normalized deformed-Euclidean kernels.
KernelMap me_kernel(const MixedEuclideanMetric& m);

/// Handle carrying the ME kernel (kind MixedEuclidean).
MetricHandle to_metric_handle(const MixedEuclideanMetric& m);

/// Christoffel term of the Levi-Civita connection:
/// Gamma(X, Y) = ((d_Sigma u)^{-1} H_Sigma u(X,Y) + (d_Sigma v)^{-1} H_Sigma v(X,Y)) / 2.
Matrix me_connection(const MixedEuclideanMetric& m, const SpdMatrix& sigma,
                     const Matrix& x, const Matrix& y);

/// Four-index curvature coefficients rho_ijkl over the eigenvalues d,
/// computed with the cancellation-free difference-of-products form.
struct CurvatureCoefficients {
  Index n = 0;
  Vector d;
  std::vector<double> rho;  ///< n^4, row-major (i, j, k, l)

  double at(Index i, Index j, Index k, Index l) const {
    return rho[static_cast<size_t>(((i * n + j) * n + k) * n + l)];
  }
};

CurvatureCoefficients curvature_coefficients(const MixedEuclideanMetric& m, const Vector& d);

/// Riemann tensor R(X, Y, Z, T) with the sign convention R = -g(R(X,Y)Z, T).
double me_curvature(const MixedEuclideanMetric& m, const SpdMatrix& sigma,
                    const Matrix& x, const Matrix& y, const Matrix& z, const Matrix& t);

/// kappa(X, Y) = R(X,Y,X,Y) / (g(X,X) g(Y,Y) - g(X,Y)^2).
/// Throws DegeneratePlaneError when the denominator is at or below the floor.
double sectional_curvature(const MixedEuclideanMetric& m, const SpdMatrix& sigma,
                           const Matrix& x, const Matrix& y);

/// Commuting-case closed forms; they reduce to the alpha0-power-Euclidean
/// operations with alpha0 = (alpha + beta)/2. Guards: NotCommutingError,
/// InvalidPairError when alpha + beta = 0.
GeodesicCurve mpe_geodesic_commuting(const MpePair& pair, const SpdMatrix& sigma,
                                     const Matrix& v);
Matrix mpe_log_commuting(const MpePair& pair, const SpdMatrix& sigma,
                         const SpdMatrix& lambda);
double mpe_distance_commuting(const MpePair& pair, const SpdMatrix& sigma,
                              const SpdMatrix& lambda);

namespace detail {

/// Divided-difference tables at a diagonal base point; shared by the public
/// curvature operations and the experiment sampler.
struct MeTables {
  Index n = 0;
  Matrix w;               ///< u^[1] .* v^[1]
  Matrix s;               ///< 1 / (2 u^[1] v^[1])
  std::vector<double> c;  ///< c[(i n + j) n + l] = u_ij v_ijl - v_ij u_ijl
  double normalizer = 1.0;  ///< u'(1) v'(1)

  double cc(Index i, Index j, Index l) const {
    return c[static_cast<size_t>((i * n + j) * n + l)];
  }
};

MeTables me_tables(const ScalarFunction& u, const ScalarFunction& v, const Vector& d);

/// Streaming O(n^3) contraction of the curvature tensor over the tables.
double curvature_from_tables(const MeTables& t, const Matrix& x, const Matrix& y,
                             const Matrix& z, const Matrix& tt);

/// Metric value (1/N) sum w_ij U_ij V_ij from the tables.
double metric_from_tables(const MeTables& t, const Matrix& u, const Matrix& v);

/// R(X, Y, X, Y) using caller-provided scratch tables (no allocation); the
/// Monte-Carlo sampler's hot path.
struct KappaScratch {
  Matrix pxy, pyx, pxx, pyy;
};
double kappa_numerator(const MeTables& t, const Matrix& x, const Matrix& y,
                       KappaScratch& scratch);

}  // namespace detail

}  // namespace spdgeom
