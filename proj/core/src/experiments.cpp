#include "spdgeom/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "spdgeom/errors.hpp"
#include "spdgeom/mixed_euclidean.hpp"
#include "spdgeom/parallel.hpp"
#include "spdgeom/rng.hpp"

namespace spdgeom {

namespace {

constexpr double kSpreadCycle[4] = {1.0, 2.0, 4.0, 6.0};

int range_count(double lo, double hi, double step, const char* what) {
  if (!(step > 0.0) || hi < lo) {
    throw ParseError(std::string(what) + ": invalid range");
  }
  const double len = (hi - lo) / step;
  const double rounded = std::round(len);
  if (std::abs(len - rounded) > 1e-9 * std::max(1.0, std::abs(len))) {
    throw ParseError(std::string(what) + ": step does not divide the range length");
  }
  return static_cast<int>(rounded) + 1;
}

}  // namespace

GridConfig GridConfig::fast() {
  GridConfig cfg;
  cfg.step = 0.25;
  cfg.n_matrices = 100;
  cfg.n_planes = 4000;
  return cfg;
}

void GridConfig::validate() const {
  range_count(alpha_lo, alpha_hi, step, "GridConfig alpha");
  range_count(beta_lo, beta_hi, step, "GridConfig beta");
  if (dim < 2) throw ParseError("GridConfig: dim must be >= 2");
  if (n_matrices < 1 || n_planes < 1) {
    throw ParseError("GridConfig: sample counts must be >= 1");
  }
}

int GridConfig::alpha_count() const {
  return range_count(alpha_lo, alpha_hi, step, "GridConfig alpha");
}
int GridConfig::beta_count() const {
  return range_count(beta_lo, beta_hi, step, "GridConfig beta");
}

CurvatureSample generate_curvature_sample(std::uint64_t seed, int dim, int n_matrices,
                                          int n_planes) {
  SplitMix64 rng(seed);
  CurvatureSample sample;
  sample.dim = dim;
  sample.diagonals.reserve(static_cast<size_t>(n_matrices));
  for (int m = 0; m < n_matrices; ++m) {
    const double sigma = kSpreadCycle[m % 4];
    Vector g(dim);
    for (int i = 0; i < dim; ++i) g(i) = sigma * rng.normal();
    const double mean = g.mean();
    Vector d(dim);
    for (int i = 0; i < dim; ++i) d(i) = std::exp(g(i) - mean);
    sample.diagonals.push_back(std::move(d));
  }
  sample.xi.reserve(static_cast<size_t>(n_planes));
  sample.eta.reserve(static_cast<size_t>(n_planes));
  for (int p = 0; p < n_planes; ++p) {
    Matrix a(dim, dim), b(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = rng.normal();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) b(i, j) = rng.normal();
    sample.xi.push_back(0.5 * (a + a.transpose()));
    sample.eta.push_back(0.5 * (b + b.transpose()));
  }
  return sample;
}

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

struct CellScratch {
  Matrix x, y;
  detail::KappaScratch kappa;
};

// One Monte-Carlo cell: min/max of kappa over all (matrix, plane) pairs.
GridCell run_cell(double alpha, double beta, const CurvatureSample& sample,
                  CellScratch& scratch) {
  GridCell cell;
  cell.alpha = alpha;
  cell.beta = beta;
  cell.kappa_min = std::numeric_limits<double>::infinity();
  cell.kappa_max = -std::numeric_limits<double>::infinity();

  const ScalarFunction u = ScalarFunction::power_or_log(alpha);
  const ScalarFunction v = ScalarFunction::power_or_log(beta);
  const int n = sample.dim;
  Matrix iso_scale(n, n);

  for (size_t mi = 0; mi < sample.diagonals.size(); ++mi) {
    const auto tables = detail::me_tables(u, v, sample.diagonals[mi]);
    // g-orthonormal realization scale for the metric-isotropic plane family.
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double coeff = (i == j ? 1.0 : 2.0) * tables.w(i, j) / tables.normalizer;
        iso_scale(i, j) = 1.0 / std::sqrt(coeff);
      }
    }
    for (size_t pi = 0; pi < sample.xi.size(); ++pi) {
      if (pi % 2 == 1) {
        scratch.x = sample.xi[pi].cwiseProduct(iso_scale);
        scratch.y = sample.eta[pi].cwiseProduct(iso_scale);
      } else {
        scratch.x = sample.xi[pi];
        scratch.y = sample.eta[pi];
      }
      const double gxx = detail::metric_from_tables(tables, scratch.x, scratch.x);
      const double gyy = detail::metric_from_tables(tables, scratch.y, scratch.y);
      const double gxy = detail::metric_from_tables(tables, scratch.x, scratch.y);
      const double den = gxx * gyy - gxy * gxy;
      if (den <= kSecDenomRelFloor * gxx * gyy) {
        ++cell.n_skipped;
        continue;
      }
      const double kappa =
          detail::kappa_numerator(tables, scratch.x, scratch.y, scratch.kappa) / den;
      if (kappa < cell.kappa_min) {
        cell.kappa_min = kappa;
        cell.argmin_matrix = static_cast<int>(mi);
        cell.argmin_plane = static_cast<int>(pi);
      }
      if (kappa > cell.kappa_max) {
        cell.kappa_max = kappa;
        cell.argmax_matrix = static_cast<int>(mi);
        cell.argmax_plane = static_cast<int>(pi);
      }
    }
  }
  return cell;
}

}  // namespace

GridSummary curvature_grid(const GridConfig& cfg) {
  cfg.validate();
  const int na = cfg.alpha_count();
  const int nb = cfg.beta_count();
  const CurvatureSample sample =
      generate_curvature_sample(cfg.seed, cfg.dim, cfg.n_matrices, cfg.n_planes);

  GridSummary summary;
  summary.cells.resize(static_cast<size_t>(na) * static_cast<size_t>(nb));
  parallel_for(na * nb, cfg.threads, [&](int idx) {
    thread_local CellScratch scratch;
    const int ia = idx / nb;
    const int ib = idx % nb;
    const double alpha = cfg.alpha_lo + ia * cfg.step;
    const double beta = cfg.beta_lo + ib * cfg.step;
    summary.cells[static_cast<size_t>(idx)] = run_cell(alpha, beta, sample, scratch);
  });

  summary.kappa_min = std::numeric_limits<double>::infinity();
  summary.kappa_max = -std::numeric_limits<double>::infinity();
  for (const auto& cell : summary.cells) {
    summary.kappa_min = std::min(summary.kappa_min, cell.kappa_min);
    summary.kappa_max = std::max(summary.kappa_max, cell.kappa_max);
    summary.total_skipped += cell.n_skipped;
  }

  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw Error("curvature_grid: cannot open '" + cfg.out_path + "'");
    out << "alpha,beta,kappa_min,kappa_max,n_skipped\n";
    for (const auto& cell : summary.cells) {
      out << format_float(cell.alpha) << ',' << format_float(cell.beta) << ','
          << format_float(cell.kappa_min) << ',' << format_float(cell.kappa_max) << ','
          << cell.n_skipped << '\n';
    }
  }
  return summary;
}

MeanScanResult mean_kernel_scan_csv(double p_lo, double p_hi, double step,
                                    const std::string& out_path, int threads) {
  const MeanScanResult result = mean_kernel_scan(p_lo, p_hi, step, MeanAxiomGrid{}, threads);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("mean_kernel_scan_csv: cannot open '" + out_path + "'");
    out << "p,is_mean,worst_axiom,worst_violation\n";
    for (const auto& row : result.rows) {
      const char* flag = row.is_mean ? (*row.is_mean ? "true" : "false") : "undefined";
      out << format_float(row.p) << ',' << flag << ',' << row.worst_axiom << ','
          << format_float(row.worst_violation) << '\n';
    }
    if (result.p0_bracket) {
      out << "# p0_bracket," << format_float(result.p0_bracket->first) << ','
          << format_float(result.p0_bracket->second) << '\n';
    }
  }
  return result;
}

}  // namespace spdgeom
