#include "spdgeom/divergences.hpp"

#include <cmath>
#include <utility>

#include "spdgeom/errors.hpp"
#include "spdgeom/univariate.hpp"

namespace spdgeom {

DivergenceSpec DivergenceSpec::ab(double alpha, double beta) {
  DivergenceSpec s;
  s.kind = Kind::AlphaBeta;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

DivergenceSpec DivergenceSpec::uv(ScalarFunction u, ScalarFunction v,
                                  std::optional<ScalarFunction> h) {
  if (!u.is_diffeomorphism() || !v.is_diffeomorphism()) {
    throw NotDiffeomorphismError("DivergenceSpec::uv: u, v must be diffeomorphisms");
  }
  DivergenceSpec s;
  s.kind = Kind::UV;
  s.u = std::move(u);
  s.v = std::move(v);
  s.h = std::move(h);
  return s;
}

namespace {

Matrix mat_pow(const SpdMatrix& s, double p) {
  return univariate_apply(ScalarFunction::power(p), s);
}

Matrix mat_log(const SpdMatrix& s) { return univariate_apply(ScalarFunction::log(), s); }

double tr(const Matrix& m) { return m.trace(); }

// Adaptive Simpson with absolute tolerance.
double simpson(const std::function<double(double)>& f, double a, double m, double b,
               double fa, double fm, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) {
    throw QuadratureFailureError("adaptive Simpson did not reach tolerance");
  }
  return simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double sign = a <= b ? 1.0 : -1.0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  const double mid = 0.5 * (lo + hi);
  const double flo = f(lo), fmid = f(mid), fhi = f(hi);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  return sign * simpson(f, lo, mid, hi, flo, fmid, fhi, whole, tol, 48);
}

}  // namespace

double ab_divergence(double alpha, double beta, const SpdMatrix& sigma,
                     const SpdMatrix& sigma2) {
  require_same_dim(sigma.matrix(), sigma2.matrix(), "ab_divergence");
  const double a = alpha, b = beta;
  if (a == 0.0 && b == 0.0) {
    return 0.5 * (mat_log(sigma) - mat_log(sigma2)).squaredNorm();
  }
  if (a == b) {
    return 0.5 / (a * a) * (mat_pow(sigma, a) - mat_pow(sigma2, a)).squaredNorm();
  }
  if (a == -b) {
    const Index n = sigma.dim();
    const Matrix inner = Matrix::Identity(n, n) + a * mat_log(sigma) - a * mat_log(sigma2) -
                         mat_pow(sigma, a) * mat_pow(sigma2, -a);
    return -tr(inner) / (a * a);
  }
  if (b == 0.0) {
    const Matrix sa = mat_pow(sigma, a);
    const Matrix inner = sa * mat_log(sigma) - sa / a + mat_pow(sigma2, a) / a -
                         sa * mat_log(sigma2);
    return tr(inner) / a;
  }
  if (a == 0.0) {
    return ab_divergence(b, 0.0, sigma2, sigma);  // dual of the (beta, 0) case
  }
  const double ab = a + b;
  const double t = (a / ab) * tr(mat_pow(sigma, ab)) + (b / ab) * tr(mat_pow(sigma2, ab)) -
                   tr(mat_pow(sigma, a) * mat_pow(sigma2, b));
  return t / (a * b);
}

double ab_potential(double alpha, double beta, const SpdMatrix& sigma) {
  const double a = alpha, b = beta;
  if (a == 0.0 && b == 0.0) {
    return 0.5 * mat_log(sigma).squaredNorm();
  }
  if (a == b) {
    return 0.5 / (a * a) * tr(mat_pow(sigma, 2.0 * a));
  }
  if (a == -b) {
    return -tr(mat_log(sigma)) / a;
  }
  if (b == 0.0) {
    const Matrix sa = mat_pow(sigma, a);
    return tr(sa * mat_log(sigma) - sa / a) / a;
  }
  if (a == 0.0) {
    // psi^{0,beta} = phi^{beta,0}: tr(Sigma^b)/b^2 from the dual structure.
    return tr(mat_pow(sigma, b)) / (b * b);
  }
  return tr(mat_pow(sigma, a + b)) / (b * (a + b));
}

namespace {

struct UvParts {
  const ScalarFunction& u;
  const ScalarFunction& v;
  double norm;  ///< u'(1) v'(1)

  explicit UvParts(const DivergenceSpec& spec) : u(*spec.u), v(*spec.v) {
    norm = u.d1(1.0) * v.d1(1.0);
  }

  double pairing(const SpdMatrix& s, const SpdMatrix& s2) const {
    return tr(univariate_apply(u, s) * univariate_apply(v, s2)) / norm;
  }
};

/// psi(Sigma) = sum_i h~(d_i), h~' = v u' / (u'(1) v'(1)), h~(1) = 0 for the
/// quadrature path; a supplied h is rescaled by the same normalizer.
double uv_psi(const DivergenceSpec& spec, const UvParts& parts, const SpdMatrix& sigma) {
  double acc = 0.0;
  if (spec.h) {
    for (Index i = 0; i < sigma.dim(); ++i) {
      acc += (*spec.h)(sigma.eigenvalues()(i));
    }
    return acc / parts.norm;
  }
  const auto& u = parts.u;
  const auto& v = parts.v;
  auto integrand = [&u, &v](double t) { return v(t) * u.d1(t); };
  for (Index i = 0; i < sigma.dim(); ++i) {
    acc += integrate(integrand, 1.0, sigma.eigenvalues()(i), 1e-12);
  }
  return acc / parts.norm;
}

}  // namespace

double uv_divergence(const DivergenceSpec& spec, const SpdMatrix& sigma,
                     const SpdMatrix& sigma2) {
  if (spec.kind != DivergenceSpec::Kind::UV) {
    throw InvalidPairError("uv_divergence: spec is not uv-kind");
  }
  require_same_dim(sigma.matrix(), sigma2.matrix(), "uv_divergence");
  const UvParts parts(spec);
  const double psi_x = uv_psi(spec, parts, sigma);
  const double psi_y = uv_psi(spec, parts, sigma2);
  const double phi_y = parts.pairing(sigma2, sigma2) - psi_y;
  return psi_x + phi_y - parts.pairing(sigma, sigma2);
}

PotentialValue uv_potentials(const DivergenceSpec& spec, const SpdMatrix& sigma) {
  if (spec.kind != DivergenceSpec::Kind::UV) {
    throw InvalidPairError("uv_potentials: spec is not uv-kind");
  }
  const UvParts parts(spec);
  const double psi = uv_psi(spec, parts, sigma);
  return {psi, parts.pairing(sigma, sigma) - psi};
}

double divergence(const DivergenceSpec& spec, const SpdMatrix& sigma,
                  const SpdMatrix& sigma2) {
  return spec.kind == DivergenceSpec::Kind::AlphaBeta
             ? ab_divergence(spec.alpha, spec.beta, sigma, sigma2)
             : uv_divergence(spec, sigma, sigma2);
}

double dual_divergence(const DivergenceSpec& spec, const SpdMatrix& sigma,
                       const SpdMatrix& sigma2) {
  return divergence(spec, sigma2, sigma);
}

double induced_metric_fd(const DivergenceSpec& spec, const SpdMatrix& sigma,
                         const Matrix& x, const Matrix& y) {
  require_same_dim(sigma.matrix(), x, "induced_metric_fd");
  require_same_dim(sigma.matrix(), y, "induced_metric_fd");
  require_symmetric(x, "induced_metric_fd");
  require_symmetric(y, "induced_metric_fd");

  const double lam_min = sigma.eigenvalues()(sigma.dim() - 1);
  double h = 1e-4 * lam_min / (1.0 + x.norm() + y.norm());
  const double h_floor = h * 0x1p-40;

  while (h > h_floor) {
    try {
      const SpdMatrix sp_x(sigma.matrix() + h * x);
      const SpdMatrix sm_x(sigma.matrix() - h * x);
      const SpdMatrix sp_y(sigma.matrix() + h * y);
      const SpdMatrix sm_y(sigma.matrix() - h * y);
      const double mixed = divergence(spec, sp_x, sp_y) - divergence(spec, sp_x, sm_y) -
                           divergence(spec, sm_x, sp_y) + divergence(spec, sm_x, sm_y);
      return -mixed / (4.0 * h * h);
    } catch (const NotPositiveDefiniteError&) {
      h *= 0.5;
    }
  }
  throw StepUnderflowError("induced_metric_fd: no usable step inside the SPD cone");
}

}  // namespace spdgeom
