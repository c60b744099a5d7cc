#include "spdgeom/mean_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "spdgeom/divided_differences.hpp"
#include "spdgeom/errors.hpp"
#include "spdgeom/parallel.hpp"

namespace spdgeom {

const char* mean_axiom_name(MeanAxiom a) {
  switch (a) {
    case MeanAxiom::Symmetry: return "symmetry";
    case MeanAxiom::Homogeneity: return "homogeneity";
    case MeanAxiom::Monotonicity: return "monotonicity";
    case MeanAxiom::Betweenness: return "betweenness";
  }
  return "?";
}

const MeanViolation* MeanCheckReport::worst() const {
  const MeanViolation* w = nullptr;
  for (const auto& v : violations) {
    if (!w || v.magnitude > w->magnitude) w = &v;
  }
  return w;
}

namespace {

struct WorstTracker {
  bool hit = false;
  double magnitude = 0.0;
  double x = 0.0, y = 0.0;

  // Worst by magnitude; ties broken by smaller x, then smaller y, so the
  // report is deterministic regardless of scan order.
  void update(double mag, double px, double py) {
    if (!hit || mag > magnitude ||
        (mag == magnitude && (px < x || (px == x && py < y)))) {
      hit = true;
      magnitude = mag;
      x = px;
      y = py;
    }
  }
};

double checked_eval(const std::function<double(double, double)>& m, double x, double y) {
  const double v = m(x, y);
  if (!std::isfinite(v)) {
    throw EvaluationError("mean_kernel_check: non-finite value at (" +
                          std::to_string(x) + ", " + std::to_string(y) + ")");
  }
  return v;
}

}  // namespace

MeanCheckReport mean_kernel_check(const std::function<double(double, double)>& m,
                                  const MeanAxiomGrid& grid) {
  const int n = grid.points_per_axis;
  std::vector<double> g(static_cast<size_t>(n));
  const double llo = std::log10(grid.lo), lhi = std::log10(grid.hi);
  for (int i = 0; i < n; ++i) {
    g[static_cast<size_t>(i)] =
        std::pow(10.0, llo + (lhi - llo) * static_cast<double>(i) / (n - 1));
  }

  std::vector<double> table(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      table[static_cast<size_t>(i) * n + j] = checked_eval(m, g[i], g[j]);
    }
  }

  WorstTracker sym, hom, mono, betw;
  for (int i = 0; i < n; ++i) {
    const double x = g[static_cast<size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const double y = g[static_cast<size_t>(j)];
      const double mxy = table[static_cast<size_t>(i) * n + j];

      const double sym_gap = std::abs(mxy - table[static_cast<size_t>(j) * n + i]);
      if (sym_gap > grid.axiom_tol_rel * std::abs(mxy)) sym.update(sym_gap, x, y);

      const double hi_arg = std::max(x, y), lo_arg = std::min(x, y);
      const double betw_gap = std::max(lo_arg - mxy, mxy - hi_arg);
      if (betw_gap > grid.axiom_tol_rel * hi_arg) betw.update(betw_gap, x, y);

      for (double c : grid.homogeneity_factors) {
        const double hom_gap = std::abs(checked_eval(m, c * x, c * y) - c * mxy);
        if (hom_gap > grid.axiom_tol_rel * c * std::abs(mxy)) hom.update(hom_gap, x, y);
      }

      const double decrease = mxy - checked_eval(m, x + grid.mono_delta_rel * x, y);
      if (decrease > grid.mono_tol_rel * std::abs(mxy)) mono.update(decrease, x, y);
    }
  }

  MeanCheckReport report;
  auto push = [&report](MeanAxiom a, const WorstTracker& t) {
    if (t.hit) report.violations.push_back({a, t.x, t.y, t.magnitude});
  };
  push(MeanAxiom::Symmetry, sym);
  push(MeanAxiom::Homogeneity, hom);
  push(MeanAxiom::Monotonicity, mono);
  push(MeanAxiom::Betweenness, betw);
  report.is_mean = report.violations.empty();
  return report;
}

MeanKernelSpec power_wasserstein_mean(double p) {
  if (p == 0.0 || p == 2.0) {
    throw InvalidPowerError("power_wasserstein_mean: p = " + std::to_string(p) +
                            " is excluded (p = 0 degenerates the power map, "
                            "p = 2 the mean-power decomposition)");
  }
  const ScalarFunction pow_p = ScalarFunction::power(p);

  // phi / 4 == (p^2/2) (x^p + y^p) / (pow_p^[1](x,y))^2; the stabilized first
  // divided difference supplies the coincidence limit.
  auto quarter_phi = [p, pow_p](double x, double y) {
    const double q = divided_diff_1(pow_p, x, y);
    return 0.5 * p * p * (std::pow(x, p) + std::pow(y, p)) / (q * q);
  };
  const double inv_theta = 1.0 / (2.0 - p);
  auto mean = [quarter_phi, inv_theta](double x, double y) {
    return std::pow(quarter_phi(x, y), inv_theta);
  };
  KernelMap kernel("power-wasserstein(p=" + std::to_string(p) + ")",
                   [quarter_phi](double x, double y) { return 4.0 * quarter_phi(x, y); });
  return MeanKernelSpec{"power-wasserstein(p=" + std::to_string(p) + ")",
                        std::move(mean), 4.0, 2.0 - p, std::move(kernel)};
}

namespace {

bool is_excluded_power(double p) { return std::abs(p) < 1e-12 || std::abs(p - 2.0) < 1e-12; }

MeanScanRow classify_power(double p, const MeanAxiomGrid& grid) {
  MeanScanRow row;
  row.p = p;
  if (is_excluded_power(p)) {
    row.worst_axiom = "undefined";
    return row;
  }
  const auto spec = power_wasserstein_mean(p);
  const auto report = mean_kernel_check(spec.mean, grid);
  row.is_mean = report.is_mean;
  if (const auto* w = report.worst()) {
    row.worst_axiom = mean_axiom_name(w->axiom);
    row.worst_violation = w->magnitude;
  }
  return row;
}

}  // namespace

MeanScanResult mean_kernel_scan(double p_lo, double p_hi, double step,
                                const MeanAxiomGrid& grid, int threads) {
  if (!(step > 0.0) || p_hi < p_lo) {
    throw ParseError("mean_kernel_scan: invalid range");
  }
  const int count = static_cast<int>(std::floor((p_hi - p_lo) / step + 1e-9)) + 1;

  MeanScanResult result;
  result.rows.resize(static_cast<size_t>(count));
  parallel_for(count, threads, [&](int i) {
    result.rows[static_cast<size_t>(i)] = classify_power(p_lo + i * step, grid);
  });

  // Boundary bracket: first classified false -> true transition as p grows.
  for (size_t i = 0; i + 1 < result.rows.size(); ++i) {
    const auto& a = result.rows[i];
    const auto& b = result.rows[i + 1];
    if (a.is_mean && b.is_mean && !*a.is_mean && *b.is_mean) {
      double lo = a.p, hi = b.p;
      for (int it = 0; it < 30; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (is_excluded_power(mid)) break;
        const auto row = classify_power(mid, grid);
        (row.is_mean && *row.is_mean ? hi : lo) = mid;
      }
      result.p0_bracket = {lo, hi};
      break;
    }
  }
  return result;
}

}  // namespace spdgeom
