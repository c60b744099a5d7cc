#include "spdgeom/deformed.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "spdgeom/divided_differences.hpp"
#include "spdgeom/errors.hpp"
#include "spdgeom/univariate.hpp"

namespace spdgeom {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MetricHandle::MetricHandle(MetricKind kind, std::string name, KernelMap kernel,
                           std::optional<ScalarFunction> deformation, double scale)
    : kind_(kind),
      name_(std::move(name)),
      kernel_(std::move(kernel)),
      deformation_(std::move(deformation)),
      scale_(scale) {}

MetricHandle MetricHandle::euclidean() {
  return MetricHandle(MetricKind::FlatDeformedEuclidean, "euclidean",
                      KernelMap("euclidean", [](double, double) { return 1.0; }),
                      ScalarFunction::identity(), 1.0);
}

MetricHandle MetricHandle::from_kernel(KernelMap kernel, std::string name, double scale) {
  return MetricHandle(MetricKind::KernelOnly, std::move(name), std::move(kernel),
                      std::nullopt, scale);
}

MetricHandle MetricHandle::bures_wasserstein() {
  return MetricHandle(MetricKind::KernelOnly, "bures-wasserstein",
                      KernelMap("bures-wasserstein",
                                [](double x, double y) { return 2.0 * (x + y); }),
                      std::nullopt, 1.0);
}

MetricHandle MetricHandle::deformed_euclidean(ScalarFunction u, double scale) {
  if (!u.is_diffeomorphism()) {
    throw NotDiffeomorphismError("deformed_euclidean: '" + u.name() +
                                 "' is not a diffeomorphism");
  }
  KernelMap kernel(u.name() + "-euclidean", [u](double x, double y) {
    const double k = divided_diff_1(u, x, y);
    return 1.0 / (k * k);
  });
  return MetricHandle(MetricKind::FlatDeformedEuclidean, u.name() + "-euclidean",
                      std::move(kernel), std::move(u), scale);
}

MetricHandle MetricHandle::log_euclidean() {
  auto h = deformed_euclidean(ScalarFunction::log());
  return MetricHandle(h.kind(), "log-euclidean", h.kernel(), h.deformation(), 1.0);
}

MetricHandle MetricHandle::power_euclidean(double p) {
  auto h = deformed_euclidean(ScalarFunction::power(p), 1.0 / (p * p));
  return MetricHandle(h.kind(), "power-euclidean(p=" + std::to_string(p) + ")",
                      h.kernel(), h.deformation(), h.scale());
}

MetricHandle MetricHandle::power_wasserstein(double p) {
  auto h = deform_metric(bures_wasserstein(), ScalarFunction::power(p));
  return MetricHandle(h.kind(), "power-wasserstein(p=" + std::to_string(p) + ")",
                      h.kernel(), h.deformation(), 1.0 / (p * p));
}

double MetricHandle::eval(const SpdMatrix& sigma, const Matrix& x, const Matrix& y) const {
  return scale_ * kernel_metric_eval(kernel_, sigma, x, y);
}

KernelMap MetricHandle::effective_kernel() const {
  const double s = scale_;
  const KernelMap k = kernel_;
  return KernelMap(name_, [k, s](double x, double y) { return k(x, y) / s; });
}

MetricHandle MetricHandle::with_scale(double s) const {
  return MetricHandle(kind_, name_, kernel_, deformation_, scale_ * s);
}

MetricHandle deform_metric(const MetricHandle& base, const ScalarFunction& f) {
  if (!f.is_diffeomorphism()) {
    throw NotDiffeomorphismError("deform_metric: '" + f.name() +
                                 "' is not a diffeomorphism");
  }
  const KernelMap base_kernel = base.kernel();
  KernelMap pulled(base_kernel.name() + "*" + f.name(),
                   [base_kernel, f](double x, double y) {
                     const double k = divided_diff_1(f, x, y);
                     return base_kernel(f(x), f(y)) / (k * k);
                   });
  const std::string name = f.name() + "*" + base.name();
  if (base.kind() == MetricKind::FlatDeformedEuclidean) {
    // (u o f)-deformed Euclidean; pullback composes the diffeomorphisms.
    return MetricHandle(MetricKind::FlatDeformedEuclidean, name, std::move(pulled),
                        compose(*base.deformation(), f), base.scale());
  }
  return MetricHandle(MetricKind::Deformed, name, std::move(pulled), f, base.scale());
}

namespace {

const ScalarFunction& require_flat(const MetricHandle& handle, const char* what) {
  if (handle.kind() != MetricKind::FlatDeformedEuclidean || !handle.deformation()) {
    throw UnsupportedBaseError(std::string(what) +
                               ": closed form requires a (deformed-)Euclidean base, got '" +
                               handle.name() + "'");
  }
  return *handle.deformation();
}

}  // namespace

double deformed_distance(const MetricHandle& handle, const SpdMatrix& sigma,
                         const SpdMatrix& lambda) {
  const ScalarFunction& u = require_flat(handle, "deformed_distance");
  require_same_dim(sigma.matrix(), lambda.matrix(), "deformed_distance");
  const Matrix diff = univariate_apply(u, sigma) - univariate_apply(u, lambda);
  return std::sqrt(handle.scale()) * diff.norm();
}

GeodesicCurve deformed_geodesic(const MetricHandle& handle, const SpdMatrix& sigma,
                                const Matrix& x) {
  const ScalarFunction u = require_flat(handle, "deformed_geodesic");
  const Matrix a = univariate_apply(u, sigma);
  const Matrix w = univariate_differential(u, sigma, x);
  const Interval image = u.image();

  auto preimage = [u, image](const Matrix& m) {
    auto e = sym_eigendecompose(m);
    Vector back(e.d.size());
    for (Index i = 0; i < e.d.size(); ++i) {
      if (!image.contains(e.d(i))) {
        throw DomainExitError("deformed_geodesic: eigenvalue " + std::to_string(e.d(i)) +
                              " left the image of '" + u.name() + "'");
      }
      back(i) = u.invert(e.d(i));
    }
    return SpdMatrix(e.P * back.asDiagonal() * e.P.transpose());
  };

  auto inside = [&](double t) {
    const Matrix m = a + t * w;
    const auto e = sym_eigendecompose(m);
    for (Index i = 0; i < e.d.size(); ++i) {
      if (!image.contains(e.d(i))) return false;
    }
    return true;
  };

  // Validity interval around t = 0: expand by doubling, then bisect the exit.
  auto boundary = [&](double direction) {
    if (image.is_whole_line()) return kInf;
    constexpr double kCap = 1e15;
    double good = 0.0, probe = direction;
    while (std::abs(probe) <= kCap && inside(probe)) {
      good = probe;
      probe *= 2.0;
    }
    if (std::abs(probe) > kCap) return kInf;
    double bad = probe;
    for (int i = 0; i < 120; ++i) {
      const double mid = 0.5 * (good + bad);
      (inside(mid) ? good : bad) = mid;
    }
    return std::abs(good);
  };

  const double t_plus = boundary(1.0);
  const double t_minus = boundary(-1.0);
  auto eval = [a, w, preimage](double t) { return preimage(a + t * w); };
  return GeodesicCurve(std::move(eval), -t_minus, t_plus);
}

Matrix deformed_log(const MetricHandle& handle, const SpdMatrix& sigma,
                    const SpdMatrix& lambda) {
  const ScalarFunction& u = require_flat(handle, "deformed_log");
  require_same_dim(sigma.matrix(), lambda.matrix(), "deformed_log");
  return univariate_differential_inverse(
      u, sigma, univariate_apply(u, lambda) - univariate_apply(u, sigma));
}

Matrix deformed_parallel_transport(const MetricHandle& handle, const SpdMatrix& sigma,
                                   const SpdMatrix& lambda, const Matrix& x) {
  const ScalarFunction& u = require_flat(handle, "deformed_parallel_transport");
  return univariate_differential_inverse(u, lambda, univariate_differential(u, sigma, x));
}

Matrix sylvester_solve(const SpdMatrix& sigma, const Matrix& x) {
  require_same_dim(sigma.matrix(), x, "sylvester_solve");
  require_symmetric(x, "sylvester_solve");
  const auto& e = sigma.eig();
  const Index n = e.d.size();
  Matrix sp = e.P.transpose() * x * e.P;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      sp(i, j) /= e.d(i) + e.d(j);
    }
  }
  return e.P * sp * e.P.transpose();
}

PowerLimitResult power_family_limit_check(const MetricHandle& base, const SpdMatrix& sigma,
                                          const Matrix& x,
                                          const std::vector<double>& p_sequence) {
  PowerLimitResult out;
  const Matrix w_log = univariate_differential(ScalarFunction::log(), sigma, x);
  out.limit_value =
      base.eval(SpdMatrix::identity(sigma.dim()), w_log, w_log);

  for (double p : p_sequence) {
    const ScalarFunction pow_p = ScalarFunction::power(p);
    const SpdMatrix sigma_p(univariate_apply(pow_p, sigma));
    const Matrix w = univariate_differential(pow_p, sigma, x);
    const double value = base.eval(sigma_p, w, w) / (p * p);
    out.rows.push_back({p, value, std::abs(value - out.limit_value)});
  }

  out.observed_rate = std::numeric_limits<double>::quiet_NaN();
  const double floor = 1e-13 * (std::abs(out.limit_value) + 1e-300);
  for (size_t i = out.rows.size(); i-- > 1;) {
    const auto& fine = out.rows[i];
    const auto& coarse = out.rows[i - 1];
    if (fine.abs_error > floor && coarse.abs_error > floor && fine.p != coarse.p) {
      out.observed_rate =
          std::log(coarse.abs_error / fine.abs_error) / std::log(coarse.p / fine.p);
      break;
    }
  }
  return out;
}

}  // namespace spdgeom
