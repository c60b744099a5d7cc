#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "spdgeom/linalg.hpp"

namespace spdgeom {

/// Smooth symmetric positive bivariate map phi on (0, inf)^2 characterizing an
/// O(n)-invariant metric: g_Sigma(X, X) = sum_ij X'_ij^2 / phi(d_i, d_j).
class KernelMap {
 public:
  using Fn = std::function<double(double, double)>;

  KernelMap(std::string name, Fn phi) : name_(std::move(name)), phi_(std::move(phi)) {}

  double operator()(double x, double y) const { return phi_(x, y); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn phi_;
};

/// Polarized kernel metric: sum_ij X'_ij Y'_ij / phi(d_i, d_j) in the
/// eigenbasis of Sigma.
double kernel_metric_eval(const KernelMap& phi, const SpdMatrix& sigma,
                          const Matrix& x, const Matrix& y);

/// Cometric rule: the kernel metric characterized by 1/phi.
KernelMap cometric_kernel(const KernelMap& phi);

/// (x - y)/(log x - log y), continued by x at coincidence.
double logarithmic_mean(double x, double y);

/// Mean-kernel decomposition phi(x, y) = a * m(x, y)^theta with m a symmetric
/// homogeneous mean.
struct MeanKernelSpec {
  std::string name;
  std::function<double(double, double)> mean;
  double coefficient = 1.0;  ///< a
  double power = 0.0;        ///< theta
  KernelMap kernel;
};

/// The Euclidean, log-Euclidean, affine-invariant, Bures-Wasserstein and
/// Bogoliubov-Kubo-Mori metrics with their kernels and mean decompositions.
std::vector<MeanKernelSpec> builtin_kernels();

/// Lookup in the builtin catalog (exact name or common alias); nullptr-like
/// empty optional if absent.
const MeanKernelSpec* find_builtin(std::string_view name);

/// Geodesic completeness criterion for mean kernel metrics: theta == 2.
bool completeness_of(const MeanKernelSpec& spec);

}  // namespace spdgeom
