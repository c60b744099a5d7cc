#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spdgeom/kernel_metrics.hpp"
#include "spdgeom/linalg.hpp"
#include "spdgeom/scalar_function.hpp"

namespace spdgeom {

enum class MetricKind {
  KernelOnly,             ///< kernel form only (e.g. Bures-Wasserstein)
  FlatDeformedEuclidean,  ///< u-pullback of the Euclidean metric; flat
  Deformed,               ///< pullback of a non-Euclidean base
  MixedEuclidean,         ///< balanced metric of two deformed-Euclidean metrics
};

/// A realized O(n)-invariant metric: kernel form, optional deformation data
/// and a scalar multiplier. Metric value = scale * sum X'_ij Y'_ij / phi.
class MetricHandle {
 public:
  static MetricHandle euclidean();
  static MetricHandle from_kernel(KernelMap kernel, std::string name, double scale = 1.0);
  static MetricHandle bures_wasserstein();
  /// tr(d_Sigma u(X) d_Sigma u(Y)), scaled. Requires a diffeomorphism.
  static MetricHandle deformed_euclidean(ScalarFunction u, double scale = 1.0);
  static MetricHandle log_euclidean();
  /// (1/p^2) pow_p-pullback of the Euclidean metric.
  static MetricHandle power_euclidean(double p);
  /// (1/p^2) pow_p-pullback of the Bures-Wasserstein metric
  /// (alpha-Procrustes with p = 2 alpha).
  static MetricHandle power_wasserstein(double p);

  MetricKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const KernelMap& kernel() const { return kernel_; }
  double scale() const { return scale_; }
  const std::optional<ScalarFunction>& deformation() const { return deformation_; }

  double eval(const SpdMatrix& sigma, const Matrix& x, const Matrix& y) const;

  /// Kernel with the scale folded in (phi / scale), characterizing the metric
  /// as a plain kernel metric.
  KernelMap effective_kernel() const;

  /// Same metric multiplied by s.
  MetricHandle with_scale(double s) const;

  MetricHandle(MetricKind kind, std::string name, KernelMap kernel,
               std::optional<ScalarFunction> deformation, double scale);

 private:
  MetricKind kind_;
  std::string name_;
  KernelMap kernel_;
  std::optional<ScalarFunction> deformation_;
  double scale_ = 1.0;
};

/// Pullback f*g: evaluating the result at (Sigma, X, Y) equals the base at
/// (f(Sigma), d_Sigma f(X), d_Sigma f(Y)). The returned handle carries the
/// pulled-back kernel phi_base(f(x), f(y)) / f^[1](x, y)^2.
MetricHandle deform_metric(const MetricHandle& base, const ScalarFunction& f);

/// Geodesic with domain of validity; evaluation outside throws DomainExitError.
class GeodesicCurve {
 public:
  GeodesicCurve(std::function<SpdMatrix(double)> eval, double t_min, double t_max)
      : eval_(std::move(eval)), t_min_(t_min), t_max_(t_max) {}

  SpdMatrix operator()(double t) const { return eval_(t); }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }

 private:
  std::function<SpdMatrix(double)> eval_;
  double t_min_, t_max_;
};

/// Closed-form distance sqrt(scale) * ||u(Sigma) - u(Lambda)||_F. Flat
/// deformed-Euclidean handles only (UnsupportedBaseError otherwise).
double deformed_distance(const MetricHandle& handle, const SpdMatrix& sigma,
                         const SpdMatrix& lambda);

/// t -> u^{-1}(u(Sigma) + t d_Sigma u(X)); the validity interval is computed
/// by bisection on the preimage condition in the eigenbasis.
GeodesicCurve deformed_geodesic(const MetricHandle& handle, const SpdMatrix& sigma,
                                const Matrix& x);

/// (d_Sigma u)^{-1}(u(Lambda) - u(Sigma)).
Matrix deformed_log(const MetricHandle& handle, const SpdMatrix& sigma,
                    const SpdMatrix& lambda);

/// Flat parallel transport (d_Lambda u)^{-1}(d_Sigma u(X)); curve-independent.
Matrix deformed_parallel_transport(const MetricHandle& handle, const SpdMatrix& sigma,
                                   const SpdMatrix& lambda, const Matrix& x);

/// Solution S of Sigma S + S Sigma = X; eigenbasis entries X'_ij/(d_i + d_j).
Matrix sylvester_solve(const SpdMatrix& sigma, const Matrix& x);

struct PowerLimitRow {
  double p;
  double value;      ///< (1/p^2) g_{Sigma^p}(d_Sigma pow_p(X), d_Sigma pow_p(X))
  double abs_error;  ///< |value - limit|
};

struct PowerLimitResult {
  std::vector<PowerLimitRow> rows;
  double limit_value;    ///< g_{I}(d_Sigma log(X), d_Sigma log(X))
  double observed_rate;  ///< fitted convergence order; NaN when errors vanish
};

/// Evaluates the scaled power-deformation family of a kernel-metric base along
/// p_sequence and compares with its log-Euclidean-type p -> 0 limit.
PowerLimitResult power_family_limit_check(const MetricHandle& base, const SpdMatrix& sigma,
                                          const Matrix& x,
                                          const std::vector<double>& p_sequence);

}  // namespace spdgeom
