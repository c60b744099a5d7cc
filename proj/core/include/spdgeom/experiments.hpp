#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spdgeom/linalg.hpp"
#include "spdgeom/mean_kernel.hpp"

namespace spdgeom {

/// Monte-Carlo sectional-curvature bound grid over MPE(alpha, beta) cells.
struct GridConfig {
  double alpha_lo = -2.0, alpha_hi = 2.0;
  double beta_lo = -2.0, beta_hi = 2.0;
  double step = 0.05;
  int dim = 3;
  int n_matrices = 1000;
  int n_planes = 1000;
  std::uint64_t seed = 42;
  std::string out_path;
  int threads = 0;  ///< 0: SPD_GEOM_THREADS or hardware

  /// CI preset: step 0.25, 100 matrices, 4000 planes.
  static GridConfig fast();

  /// Throws ParseError unless step divides both ranges within 1e-9,
  /// dim >= 2 and the sample counts are >= 1.
  void validate() const;

  int alpha_count() const;
  int beta_count() const;
};

struct GridCell {
  double alpha = 0.0, beta = 0.0;
  double kappa_min = 0.0, kappa_max = 0.0;
  long n_skipped = 0;  ///< degenerate planes skipped
  int argmin_matrix = -1, argmin_plane = -1;
  int argmax_matrix = -1, argmax_plane = -1;
};

struct GridSummary {
  std::vector<GridCell> cells;  ///< alpha-major, beta-minor order
  double kappa_min = 0.0, kappa_max = 0.0;
  long total_skipped = 0;
};

/// Shared Monte-Carlo sample. Determinant-1 diagonal matrices whose log-spread
/// sweeps sigma in {1, 2, 4, 6} (cycled over the matrix index), and plane
/// coefficient pairs (xi, eta) of symmetrized standard normals. Odd plane
/// indices are realized in the g-orthonormal basis of each cell's metric,
/// even ones as raw Frobenius coefficients; see curvature_grid.
struct CurvatureSample {
  int dim = 0;
  std::vector<Vector> diagonals;
  std::vector<Matrix> xi, eta;
};

CurvatureSample generate_curvature_sample(std::uint64_t seed, int dim, int n_matrices,
                                          int n_planes);

/// Runs the grid; cells evaluated in parallel over a shared sample, rows
/// written in deterministic (alpha, beta) order. Writes CSV when out_path is
/// set: header alpha,beta,kappa_min,kappa_max,n_skipped, floats with 17
/// significant digits, LF endings; byte-identical for identical seed+config.
GridSummary curvature_grid(const GridConfig& cfg);

/// Classifies the power-Wasserstein family over [p_lo, p_hi] and writes CSV
/// (header p,is_mean,worst_axiom,worst_violation). When the range straddles
/// the classification boundary, appends "# p0_bracket,<lo>,<hi>".
MeanScanResult mean_kernel_scan_csv(double p_lo, double p_hi, double step,
                                    const std::string& out_path, int threads = 0);

/// 17-significant-digit round-trip formatting used for all CSV floats.
std::string format_float(double v);

}  // namespace spdgeom
