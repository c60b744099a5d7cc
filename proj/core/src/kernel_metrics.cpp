#include "spdgeom/kernel_metrics.hpp"

#include <cmath>

#include "spdgeom/divided_differences.hpp"
#include "spdgeom/errors.hpp"

namespace spdgeom {

double kernel_metric_eval(const KernelMap& phi, const SpdMatrix& sigma,
                          const Matrix& x, const Matrix& y) {
  require_same_dim(sigma.matrix(), x, "kernel_metric_eval");
  require_same_dim(sigma.matrix(), y, "kernel_metric_eval");
  require_symmetric(x, "kernel_metric_eval");
  require_symmetric(y, "kernel_metric_eval");

  const auto& e = sigma.eig();
  const Matrix xp = e.P.transpose() * x * e.P;
  const Matrix yp = e.P.transpose() * y * e.P;
  const Index n = e.d.size();
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      acc += xp(i, j) * yp(i, j) / phi(e.d(i), e.d(j));
    }
  }
  return acc;
}

KernelMap cometric_kernel(const KernelMap& phi) {
  return KernelMap("cometric(" + phi.name() + ")",
                   [phi](double x, double y) { return 1.0 / phi(x, y); });
}

double logarithmic_mean(double x, double y) {
  static const ScalarFunction log_fn = ScalarFunction::log();
  return 1.0 / divided_diff_1(log_fn, x, y);
}

std::vector<MeanKernelSpec> builtin_kernels() {
  std::vector<MeanKernelSpec> out;

  auto arithmetic = [](double x, double y) { return 0.5 * (x + y); };
  auto geometric = [](double x, double y) { return std::sqrt(x * y); };
  auto logarithmic = [](double x, double y) { return logarithmic_mean(x, y); };

  out.push_back({"euclidean",
                 arithmetic,  // phi = 1 = a * m^0 for any mean
                 1.0,
                 0.0,
                 KernelMap("euclidean", [](double, double) { return 1.0; })});
  out.push_back({"log-euclidean", logarithmic, 1.0, 2.0,
                 KernelMap("log-euclidean", [](double x, double y) {
                   const double l = logarithmic_mean(x, y);
                   return l * l;
                 })});
  out.push_back({"affine-invariant", geometric, 1.0, 2.0,
                 KernelMap("affine-invariant", [](double x, double y) { return x * y; })});
  out.push_back({"bures-wasserstein", arithmetic, 4.0, 1.0,
                 KernelMap("bures-wasserstein",
                           [](double x, double y) { return 2.0 * (x + y); })});
  out.push_back({"bogoliubov-kubo-mori", logarithmic, 1.0, 1.0,
                 KernelMap("bogoliubov-kubo-mori",
                           [](double x, double y) { return logarithmic_mean(x, y); })});
  return out;
}

const MeanKernelSpec* find_builtin(std::string_view name) {
  static const std::vector<MeanKernelSpec> catalog = builtin_kernels();
  auto matches = [&](std::string_view canonical, std::initializer_list<std::string_view> aliases) {
    if (name == canonical) return true;
    for (auto a : aliases)
      if (name == a) return true;
    return false;
  };
  for (const auto& spec : catalog) {
    if (spec.name == name) return &spec;
  }
  if (matches("affine-invariant", {"affine", "fisher-rao"})) return &catalog[2];
  if (matches("bures-wasserstein", {"bw", "wasserstein"})) return &catalog[3];
  if (matches("bogoliubov-kubo-mori", {"bkm"})) return &catalog[4];
  if (matches("log-euclidean", {"log_euclidean", "le"})) return &catalog[1];
  return nullptr;
}

bool completeness_of(const MeanKernelSpec& spec) {
  return std::abs(spec.power - 2.0) <= 1e-12;
}

}  // namespace spdgeom
