#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spdgeom/kernel_metrics.hpp"

namespace spdgeom {

enum class MeanAxiom { Symmetry, Homogeneity, Monotonicity, Betweenness };

const char* mean_axiom_name(MeanAxiom a);

/// Grid and tolerances for the numerical mean-axiom verifier.
struct MeanAxiomGrid {
  int points_per_axis = 400;
  double lo = 1e-3;
  double hi = 1e3;
  std::vector<double> homogeneity_factors = {0.1, 7.0, 100.0};
  double mono_delta_rel = 1e-4;  ///< one-sided step: delta = rel * x
  double mono_tol_rel = 1e-9;    ///< decrease below this relative slack is a violation
  double axiom_tol_rel = 1e-9;   ///< slack for symmetry/homogeneity/betweenness
};

struct MeanViolation {
  MeanAxiom axiom;
  double x, y;       ///< witness point
  double magnitude;  ///< size of the worst violation of this axiom
};

struct MeanCheckReport {
  bool is_mean = false;
  std::vector<MeanViolation> violations;  ///< worst violation per violated axiom

  const MeanViolation* worst() const;  ///< largest magnitude, nullptr if none
};

/// Checks the four symmetric-homogeneous-mean axioms numerically on a
/// log-spaced grid. Throws EvaluationError on non-finite values.
MeanCheckReport mean_kernel_check(const std::function<double(double, double)>& m,
                                  const MeanAxiomGrid& grid = {});

/// Candidate mean decomposition of the power-Wasserstein kernel
/// phi(x,y) = 2 p^2 (x^p + y^p) ((x - y)/(x^p - y^p))^2, normalized so that
/// m(x,x) = x (a = 4, theta = 2 - p). Throws InvalidPowerError for p in {0, 2}.
MeanKernelSpec power_wasserstein_mean(double p);

struct MeanScanRow {
  double p = 0.0;
  std::optional<bool> is_mean;  ///< empty for the skipped powers 0 and 2
  std::string worst_axiom = "none";
  double worst_violation = 0.0;
};

struct MeanScanResult {
  std::vector<MeanScanRow> rows;
  /// (last non-mean p, first mean p) around the classification boundary,
  /// refined by bisection; present when the scan straddles it.
  std::optional<std::pair<double, double>> p0_bracket;
};

/// Classifies power_wasserstein_mean(p) over an inclusive range. Rows are
/// evaluated in parallel; the boundary bracket is refined by 30 bisection
/// steps on the first false-to-true transition.
MeanScanResult mean_kernel_scan(double p_lo, double p_hi, double step,
                                const MeanAxiomGrid& grid = {}, int threads = 0);

}  // namespace spdgeom
