#pragma once

#include <optional>

#include "spdgeom/linalg.hpp"
#include "spdgeom/scalar_function.hpp"

namespace spdgeom {

/// Specification of a divergence: the (alpha, beta) family with closed-form
/// cases, or a general (u, v) pair evaluated through the canonical-divergence
/// construction. For uv-kind, h may supply the antiderivative of v(t) u'(t)
/// (adaptive quadrature otherwise).
struct DivergenceSpec {
  enum class Kind { AlphaBeta, UV };

  Kind kind = Kind::AlphaBeta;
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<ScalarFunction> u, v, h;

  static DivergenceSpec ab(double alpha, double beta);
  static DivergenceSpec uv(ScalarFunction u, ScalarFunction v,
                           std::optional<ScalarFunction> h = std::nullopt);
};

/// Closed-form (alpha, beta)-divergence; dispatches on the five parameter cases.
double ab_divergence(double alpha, double beta, const SpdMatrix& sigma,
                     const SpdMatrix& sigma2);

/// Closed-form potential psi^{alpha,beta}(Sigma).
double ab_potential(double alpha, double beta, const SpdMatrix& sigma);

/// Potentials of the canonical divergence at Sigma; psi + phi equals the
/// pairing <u(Sigma), v(Sigma)> by construction.
struct PotentialValue {
  double psi;
  double phi;
};

/// Canonical (u, v)-divergence built on the coordinates u/u'(1), v/v'(1)
/// (normalized so the induced metric is the balanced Mixed-Euclidean metric).
double uv_divergence(const DivergenceSpec& spec, const SpdMatrix& sigma,
                     const SpdMatrix& sigma2);

PotentialValue uv_potentials(const DivergenceSpec& spec, const SpdMatrix& sigma);

/// Dispatch on spec.kind.
double divergence(const DivergenceSpec& spec, const SpdMatrix& sigma,
                  const SpdMatrix& sigma2);

/// D*(x, y) = D(y, x).
double dual_divergence(const DivergenceSpec& spec, const SpdMatrix& sigma,
                       const SpdMatrix& sigma2);

/// Central mixed second difference
/// -[D(S+hX, S+hY) - D(S+hX, S-hY) - D(S-hX, S+hY) + D(S-hX, S-hY)] / (4 h^2),
/// recovering the induced Riemannian metric. The step shrinks if the cone is
/// exited; StepUnderflowError if no usable step remains.
double induced_metric_fd(const DivergenceSpec& spec, const SpdMatrix& sigma,
                         const Matrix& x, const Matrix& y);

}  // namespace spdgeom
