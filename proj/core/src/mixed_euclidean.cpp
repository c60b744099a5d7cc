#include "spdgeom/mixed_euclidean.hpp"

#include <cmath>
#include <utility>

#include "spdgeom/divided_differences.hpp"
#include "spdgeom/errors.hpp"
#include "spdgeom/univariate.hpp"

namespace spdgeom {

MixedEuclideanMetric::MixedEuclideanMetric(ScalarFunction u, ScalarFunction v)
    : u_(std::move(u)), v_(std::move(v)) {
  if (!u_.is_diffeomorphism() || !v_.is_diffeomorphism()) {
    throw NotDiffeomorphismError("MixedEuclideanMetric: both generators must be "
                                 "univariate diffeomorphisms");
  }
  normalizer_ = 1.0 / (u_.d1(1.0) * v_.d1(1.0));
  if (!std::isfinite(normalizer_) || normalizer_ == 0.0) {
    throw NotDiffeomorphismError("MixedEuclideanMetric: u'(1) v'(1) must be "
                                 "finite and nonzero");
  }
}

MixedEuclideanMetric MixedEuclideanMetric::mpe(double alpha, double beta) {
  MpePair pair{alpha, beta};
  MixedEuclideanMetric m(pair.u(), pair.v());
  m.pair_ = pair;
  return m;
}

double balanced_form(const ScalarFunction& u, const ScalarFunction& v,
                     const SpdMatrix& sigma, const Matrix& x, const Matrix& y) {
  if (!u.is_diffeomorphism() || !v.is_diffeomorphism()) {
    throw NotDiffeomorphismError("balanced_form: generators must be diffeomorphisms");
  }
  // d_I u = u'(1) Id, so the flat transports to the identity are
  // d_Sigma u(X)/u'(1) and d_Sigma v(Y)/v'(1).
  const Matrix tx = univariate_differential(u, sigma, x) / u.d1(1.0);
  const Matrix ty = univariate_differential(v, sigma, y) / v.d1(1.0);
  return (tx.transpose() * ty).trace();
}

double me_metric_eval(const MixedEuclideanMetric& m, const SpdMatrix& sigma,
                      const Matrix& x, const Matrix& y) {
  require_same_dim(sigma.matrix(), x, "me_metric_eval");
  require_same_dim(sigma.matrix(), y, "me_metric_eval");
  require_symmetric(x, "me_metric_eval");
  require_symmetric(y, "me_metric_eval");
  const auto& e = sigma.eig();
  const Matrix xp = e.P.transpose() * x * e.P;
  const Matrix yp = e.P.transpose() * y * e.P;
  const Index n = e.d.size();
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      acc += divided_diff_1(m.u(), e.d(i), e.d(j)) *
             divided_diff_1(m.v(), e.d(i), e.d(j)) * xp(i, j) * yp(i, j);
    }
  }
  return acc * m.normalizer();
}

KernelMap me_kernel(const MixedEuclideanMetric& m) {
  const ScalarFunction u = m.u(), v = m.v();
  const double du1 = u.d1(1.0), dv1 = v.d1(1.0);
  return KernelMap("me(" + u.name() + "," + v.name() + ")",
                   [u, v, du1, dv1](double x, double y) {
                     return (du1 / divided_diff_1(u, x, y)) *
                            (dv1 / divided_diff_1(v, x, y));
                   });
}

MetricHandle to_metric_handle(const MixedEuclideanMetric& m) {
  return MetricHandle(MetricKind::MixedEuclidean,
                      "me(" + m.u().name() + "," + m.v().name() + ")", me_kernel(m),
                      std::nullopt, 1.0);
}

Matrix me_connection(const MixedEuclideanMetric& m, const SpdMatrix& sigma,
                     const Matrix& x, const Matrix& y) {
  const Matrix hu = univariate_hessian(m.u(), sigma, x, y);
  const Matrix hv = univariate_hessian(m.v(), sigma, x, y);
  return 0.5 * (univariate_differential_inverse(m.u(), sigma, hu) +
                univariate_differential_inverse(m.v(), sigma, hv));
}

namespace detail {

MeTables me_tables(const ScalarFunction& u, const ScalarFunction& v, const Vector& d) {
  MeTables t;
  const Index n = d.size();
  t.n = n;
  t.normalizer = u.d1(1.0) * v.d1(1.0);
  t.w.resize(n, n);
  t.s.resize(n, n);
  Matrix u1(n, n), v1(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      u1(i, j) = u1(j, i) = divided_diff_1(u, d(i), d(j));
      v1(i, j) = v1(j, i) = divided_diff_1(v, d(i), d(j));
    }
  }
  t.w = u1.cwiseProduct(v1);
  t.s = (2.0 * t.w).cwiseInverse();

  t.c.assign(static_cast<size_t>(n * n * n), 0.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index l = j; l < n; ++l) {
        const double u2 = divided_diff_2(u, d(i), d(j), d(l));
        const double v2 = divided_diff_2(v, d(i), d(j), d(l));
        const double cij = u1(i, j) * v2 - v1(i, j) * u2;
        t.c[static_cast<size_t>((i * n + j) * n + l)] = cij;
        // c is symmetric in its last two indices (divided-difference identity
        // u_ij - u_il = u_ijl (d_j - d_l)); store the same value to keep the
        // rho symmetries exact in floating point.
        t.c[static_cast<size_t>((i * n + l) * n + j)] = cij;
      }
    }
  }
  return t;
}

namespace {

// p_jl(U, V) = sum_i c_ijl U_ij V_il
void p_table(const MeTables& t, const Matrix& u, const Matrix& v, Matrix& out) {
  const Index n = t.n;
  out.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index l = 0; l < n; ++l) {
      double acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += t.cc(i, j, l) * u(i, j) * v(i, l);
      }
      out(j, l) = acc;
    }
  }
}

}  // namespace

double curvature_from_tables(const MeTables& t, const Matrix& x, const Matrix& y,
                             const Matrix& z, const Matrix& tt) {
  Matrix pxt, pyz, pzy, pyt, pxz, pzx;
  p_table(t, x, tt, pxt);
  p_table(t, y, z, pyz);
  p_table(t, z, y, pzy);
  p_table(t, y, tt, pyt);
  p_table(t, x, z, pxz);
  p_table(t, z, x, pzx);
  double acc = 0.0;
  for (Index j = 0; j < t.n; ++j) {
    for (Index l = 0; l < t.n; ++l) {
      acc += t.s(j, l) * (pxt(j, l) * (pyz(j, l) + pzy(j, l)) -
                          pyt(j, l) * (pxz(j, l) + pzx(j, l)));
    }
  }
  return acc / t.normalizer;
}

double metric_from_tables(const MeTables& t, const Matrix& u, const Matrix& v) {
  double acc = 0.0;
  for (Index i = 0; i < t.n; ++i) {
    for (Index j = 0; j < t.n; ++j) {
      acc += t.w(i, j) * u(i, j) * v(i, j);
    }
  }
  return acc / t.normalizer;
}

double kappa_numerator(const MeTables& t, const Matrix& x, const Matrix& y,
                       KappaScratch& scratch) {
  p_table(t, x, y, scratch.pxy);
  p_table(t, y, x, scratch.pyx);
  p_table(t, x, x, scratch.pxx);
  p_table(t, y, y, scratch.pyy);
  double acc = 0.0;
  for (Index j = 0; j < t.n; ++j) {
    for (Index l = 0; l < t.n; ++l) {
      const double pxy = scratch.pxy(j, l);
      acc += t.s(j, l) * (pxy * (scratch.pyx(j, l) + pxy) -
                          2.0 * scratch.pxx(j, l) * scratch.pyy(j, l));
    }
  }
  return acc / t.normalizer;
}

}  // namespace detail

CurvatureCoefficients curvature_coefficients(const MixedEuclideanMetric& m, const Vector& d) {
  const auto t = detail::me_tables(m.u(), m.v(), d);
  CurvatureCoefficients out;
  out.n = t.n;
  out.d = d;
  const Index n = t.n;
  out.rho.assign(static_cast<size_t>(n * n * n * n), 0.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < n; ++l) {
          out.rho[static_cast<size_t>(((i * n + j) * n + k) * n + l)] =
              t.s(j, l) * t.cc(i, j, l) * t.cc(k, j, l);
        }
      }
    }
  }
  return out;
}

double me_curvature(const MixedEuclideanMetric& m, const SpdMatrix& sigma,
                    const Matrix& x, const Matrix& y, const Matrix& z, const Matrix& t) {
  for (const Matrix* v : {&x, &y, &z, &t}) {
    require_same_dim(sigma.matrix(), *v, "me_curvature");
    require_symmetric(*v, "me_curvature");
  }
  const auto& e = sigma.eig();
  const Matrix xp = e.P.transpose() * x * e.P;
  const Matrix yp = e.P.transpose() * y * e.P;
  const Matrix zp = e.P.transpose() * z * e.P;
  const Matrix tp = e.P.transpose() * t * e.P;
  const Index n = e.d.size();

  const auto tables = detail::me_tables(m.u(), m.v(), e.d);
  if (n <= 16) {
    // Materialized rho contraction; bounded memory for the sizes experiments use.
    const auto coeff = curvature_coefficients(m, e.d);
    double acc = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k)
          for (Index l = 0; l < n; ++l) {
            acc += coeff.at(i, j, k, l) *
                   (xp(i, j) * yp(j, k) * zp(k, l) * tp(l, i) -
                    yp(i, j) * xp(j, k) * zp(k, l) * tp(l, i) +
                    xp(i, j) * zp(j, k) * yp(k, l) * tp(l, i) -
                    yp(i, j) * zp(j, k) * xp(k, l) * tp(l, i));
          }
    return acc / tables.normalizer;
  }
  return detail::curvature_from_tables(tables, xp, yp, zp, tp);
}

double sectional_curvature(const MixedEuclideanMetric& m, const SpdMatrix& sigma,
                           const Matrix& x, const Matrix& y) {
  const double gxx = me_metric_eval(m, sigma, x, x);
  const double gyy = me_metric_eval(m, sigma, y, y);
  const double gxy = me_metric_eval(m, sigma, x, y);
  const double den = gxx * gyy - gxy * gxy;
  if (den <= kSecDenomRelFloor * gxx * gyy) {
    throw DegeneratePlaneError("sectional_curvature: X and Y span a degenerate plane");
  }
  return me_curvature(m, sigma, x, y, x, y) / den;
}

namespace {

void require_commuting(const Matrix& a, const Matrix& b, const char* what) {
  const double resid = (a * b - b * a).norm();
  if (resid > kCommuteRelTol * a.norm() * b.norm()) {
    throw NotCommutingError(std::string(what) + ": matrices do not commute (residual " +
                            std::to_string(resid) + ")");
  }
}

MetricHandle alpha0_handle(const MpePair& pair, const char* what) {
  const double a0 = pair.alpha0();
  if (a0 == 0.0) {
    throw InvalidPairError(std::string(what) +
                           ": alpha + beta = 0 (log-Euclidean and power-affine "
                           "metrics are excluded)");
  }
  return MetricHandle::power_euclidean(a0);
}

}  // namespace

GeodesicCurve mpe_geodesic_commuting(const MpePair& pair, const SpdMatrix& sigma,
                                     const Matrix& v) {
  const auto handle = alpha0_handle(pair, "mpe_geodesic_commuting");
  require_symmetric(v, "mpe_geodesic_commuting");
  require_commuting(sigma.matrix(), v, "mpe_geodesic_commuting");
  return deformed_geodesic(handle, sigma, v);
}

Matrix mpe_log_commuting(const MpePair& pair, const SpdMatrix& sigma,
                         const SpdMatrix& lambda) {
  const auto handle = alpha0_handle(pair, "mpe_log_commuting");
  require_commuting(sigma.matrix(), lambda.matrix(), "mpe_log_commuting");
  return deformed_log(handle, sigma, lambda);
}

double mpe_distance_commuting(const MpePair& pair, const SpdMatrix& sigma,
                              const SpdMatrix& lambda) {
  const auto handle = alpha0_handle(pair, "mpe_distance_commuting");
  require_commuting(sigma.matrix(), lambda.matrix(), "mpe_distance_commuting");
  return deformed_distance(handle, sigma, lambda);
}

}  // namespace spdgeom
