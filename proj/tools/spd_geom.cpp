// spd-geom: experiment runner and ad-hoc evaluator for SPD-matrix geometry.
//
// Subcommands:
//   curvature-grid    Monte-Carlo sectional-curvature bounds over MPE cells
//   mean-kernel-scan  power-Wasserstein mean-kernel classification + p0 bracket
//   eval              metric | divergence | distance | curvature on given inputs
//
// Matrices are supplied as CSV files (rows of comma-separated entries) or as
// inline eigenvalue lists "diag:1,2,3". Exit codes: 0 success, 2 usage/parse
// error, 3 math domain error.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdgeom/divergences.hpp"
#include "spdgeom/errors.hpp"
#include "spdgeom/experiments.hpp"
#include "spdgeom/kernel_metrics.hpp"
#include "spdgeom/linalg.hpp"
#include "spdgeom/mixed_euclidean.hpp"

namespace {

using spdgeom::Matrix;
using spdgeom::SpdMatrix;

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw spdgeom::ParseError(std::string(what) + ": cannot parse number '" + item + "'");
    }
  }
  if (out.empty()) throw spdgeom::ParseError(std::string(what) + ": empty list");
  return out;
}

Matrix parse_matrix(const std::string& spec, const char* what) {
  if (spec.rfind("diag:", 0) == 0) {
    const auto d = parse_number_list(spec.substr(5), what);
    Matrix m = Matrix::Zero(static_cast<spdgeom::Index>(d.size()),
                            static_cast<spdgeom::Index>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<spdgeom::Index>(i),
                                            static_cast<spdgeom::Index>(i)) = d[i];
    return m;
  }
  std::ifstream in(spec);
  if (!in) throw spdgeom::ParseError(std::string(what) + ": cannot open '" + spec + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(parse_number_list(line, what));
  }
  if (rows.empty()) throw spdgeom::ParseError(std::string(what) + ": empty matrix file");
  const size_t n = rows.size();
  for (const auto& r : rows) {
    if (r.size() != n) {
      throw spdgeom::ParseError(std::string(what) + ": matrix in '" + spec +
                                "' is not square");
    }
  }
  Matrix m(static_cast<spdgeom::Index>(n), static_cast<spdgeom::Index>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      m(static_cast<spdgeom::Index>(i), static_cast<spdgeom::Index>(j)) = rows[i][j];
  return m;
}

SpdMatrix parse_spd(const std::string& spec, const char* what) {
  return SpdMatrix(parse_matrix(spec, what));
}

spdgeom::ScalarFunction parse_scalar_function(const std::string& name) {
  if (name == "id" || name == "identity") return spdgeom::ScalarFunction::identity();
  if (name == "log") return spdgeom::ScalarFunction::log();
  if (name == "sqrt") return spdgeom::ScalarFunction::power(0.5);
  if (name == "inv") return spdgeom::ScalarFunction::power(-1.0);
  if (name.rfind("pow:", 0) == 0) {
    const auto p = parse_number_list(name.substr(4), "scalar function power");
    if (p.size() != 1) throw spdgeom::ParseError("pow: expects one exponent");
    return spdgeom::ScalarFunction::power(p[0]);
  }
  throw spdgeom::ParseError("unknown scalar function '" + name +
                            "' (expected id, log, sqrt, inv or pow:<p>)");
}

struct RangeSpec {
  double lo = 0, hi = 0, step = 0;
};

RangeSpec parse_range(const std::string& text, const char* what) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) {
    throw spdgeom::ParseError(std::string(what) + ": expected lo:hi:step, got '" + text + "'");
  }
  RangeSpec r;
  try {
    r.lo = std::stod(parts[0]);
    r.hi = std::stod(parts[1]);
    r.step = std::stod(parts[2]);
  } catch (const std::exception&) {
    throw spdgeom::ParseError(std::string(what) + ": cannot parse '" + text + "'");
  }
  return r;
}

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
  const auto v = parse_number_list(text, what);
  if (v.size() != 2) throw spdgeom::ParseError(std::string(what) + ": expected a,b");
  return {v[0], v[1]};
}

void print_value(double v) { std::printf("%.15g\n", v); }

spdgeom::MixedEuclideanMetric parse_me_metric(const std::string& mpe_spec,
                                              const std::string& me_spec) {
  if (!mpe_spec.empty() && !me_spec.empty()) {
    throw spdgeom::ParseError("give either --mpe or --me, not both");
  }
  if (!mpe_spec.empty()) {
    const auto [a, b] = parse_pair(mpe_spec, "--mpe");
    return spdgeom::MixedEuclideanMetric::mpe(a, b);
  }
  if (!me_spec.empty()) {
    std::stringstream ss(me_spec);
    std::string un, vn;
    if (!std::getline(ss, un, ',') || !std::getline(ss, vn)) {
      throw spdgeom::ParseError("--me expects u,v");
    }
    return spdgeom::MixedEuclideanMetric(parse_scalar_function(un),
                                         parse_scalar_function(vn));
  }
  throw spdgeom::ParseError("a metric is required (--mpe a,b or --me u,v)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian and information geometry of SPD matrices"};
  app.require_subcommand(1);
  std::function<void()> action;

  // ---- curvature-grid ----
  auto* grid_cmd = app.add_subcommand(
      "curvature-grid", "Sectional-curvature bounds of MPE(alpha,beta) over a grid");
  std::string alpha_spec = "-2:2:0.05";
  std::string beta_spec = "-2:2:0.05";
  spdgeom::GridConfig grid_cfg;
  bool fast = false;
  grid_cmd->add_option("--alpha", alpha_spec, "alpha range lo:hi:step")
      ->capture_default_str();
  grid_cmd->add_option("--beta", beta_spec, "beta range lo:hi:step")->capture_default_str();
  grid_cmd->add_option("--dim", grid_cfg.dim, "matrix dimension")->capture_default_str();
  grid_cmd->add_option("--matrices", grid_cfg.n_matrices, "number of random diagonal matrices")
      ->capture_default_str();
  grid_cmd->add_option("--planes", grid_cfg.n_planes, "number of random tangent plane pairs")
      ->capture_default_str();
  grid_cmd->add_option("--seed", grid_cfg.seed, "PRNG seed")->capture_default_str();
  grid_cmd->add_option("--out", grid_cfg.out_path, "output CSV path")->required();
  grid_cmd->add_option("--threads", grid_cfg.threads,
                       "worker count (0: SPD_GEOM_THREADS or hardware)");
  grid_cmd->add_flag("--fast", fast, "CI preset: step 0.25, 100 matrices, 4000 planes");
  grid_cmd->callback([&]() {
    action = [&]() {
      if (fast) {
        const auto preset = spdgeom::GridConfig::fast();
        grid_cfg.step = preset.step;
        grid_cfg.n_matrices = preset.n_matrices;
        grid_cfg.n_planes = preset.n_planes;
        if (grid_cmd->count("--alpha") == 0) alpha_spec = "-2:2:0.25";
        if (grid_cmd->count("--beta") == 0) beta_spec = "-2:2:0.25";
      }
      const auto ar = parse_range(alpha_spec, "--alpha");
      const auto br = parse_range(beta_spec, "--beta");
      grid_cfg.alpha_lo = ar.lo;
      grid_cfg.alpha_hi = ar.hi;
      grid_cfg.beta_lo = br.lo;
      grid_cfg.beta_hi = br.hi;
      if (!fast) {
        grid_cfg.step = ar.step;
        if (br.step != ar.step) {
          throw spdgeom::ParseError("alpha and beta steps must match");
        }
      }
      const auto summary = spdgeom::curvature_grid(grid_cfg);
      std::printf("cells=%zu kappa_min=%.6g kappa_max=%.6g skipped=%ld\n",
                  summary.cells.size(), summary.kappa_min, summary.kappa_max,
                  summary.total_skipped);
      std::printf("wrote %s\n", grid_cfg.out_path.c_str());
    };
  });

  // ---- mean-kernel-scan ----
  auto* scan_cmd = app.add_subcommand(
      "mean-kernel-scan", "Classify power-Wasserstein metrics as mean kernel metrics");
  std::string range_spec;
  std::string scan_out;
  int scan_threads = 0;
  scan_cmd->add_option("--range", range_spec, "power range lo:hi:step")->required();
  scan_cmd->add_option("--out", scan_out, "output CSV path")->required();
  scan_cmd->add_option("--threads", scan_threads, "worker count");
  scan_cmd->callback([&]() {
    action = [&]() {
      const auto r = parse_range(range_spec, "--range");
      const auto result =
          spdgeom::mean_kernel_scan_csv(r.lo, r.hi, r.step, scan_out, scan_threads);
      int n_mean = 0, n_not = 0;
      for (const auto& row : result.rows) {
        if (row.is_mean) (*row.is_mean ? n_mean : n_not) += 1;
      }
      std::printf("rows=%zu mean=%d not_mean=%d\n", result.rows.size(), n_mean, n_not);
      if (result.p0_bracket) {
        std::printf("p0_bracket=(%.17g,%.17g)\n", result.p0_bracket->first,
                    result.p0_bracket->second);
      }
      std::printf("wrote %s\n", scan_out.c_str());
    };
  });

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a single quantity");
  eval_cmd->require_subcommand(1);

  // eval metric
  auto* metric_cmd = eval_cmd->add_subcommand("metric", "g_Sigma(X, Y)");
  std::string m_name, m_mpe, m_me, m_sigma, m_x, m_y;
  metric_cmd->add_option("--name", m_name,
                         "builtin metric (euclidean, log-euclidean, affine-invariant, "
                         "bures-wasserstein, bogoliubov-kubo-mori)");
  metric_cmd->add_option("--mpe", m_mpe, "MPE pair alpha,beta");
  metric_cmd->add_option("--me", m_me, "ME pair u,v (id, log, sqrt, inv, pow:<p>)");
  metric_cmd->add_option("--sigma", m_sigma, "base point (CSV file or diag:...)")->required();
  metric_cmd->add_option("--x", m_x, "tangent vector X")->required();
  metric_cmd->add_option("--y", m_y, "tangent vector Y (default: X)");
  metric_cmd->callback([&]() {
    action = [&]() {
      const SpdMatrix sigma = parse_spd(m_sigma, "--sigma");
      const Matrix x = parse_matrix(m_x, "--x");
      const Matrix y = m_y.empty() ? x : parse_matrix(m_y, "--y");
      if (!m_name.empty()) {
        const auto* spec = spdgeom::find_builtin(m_name);
        if (!spec) throw spdgeom::ParseError("unknown metric '" + m_name + "'");
        print_value(spdgeom::kernel_metric_eval(spec->kernel, sigma, x, y));
        return;
      }
      const auto metric = parse_me_metric(m_mpe, m_me);
      print_value(spdgeom::me_metric_eval(metric, sigma, x, y));
    };
  });

  // eval divergence
  auto* div_cmd = eval_cmd->add_subcommand("divergence", "D(Sigma | Sigma')");
  double d_alpha = 1.0, d_beta = 1.0;
  std::string d_uv, d_sigma, d_sigma2;
  bool d_dual = false;
  div_cmd->add_option("--alpha", d_alpha, "alpha")->capture_default_str();
  div_cmd->add_option("--beta", d_beta, "beta")->capture_default_str();
  div_cmd->add_option("--uv", d_uv, "general pair u,v instead of (alpha,beta)");
  div_cmd->add_option("--sigma", d_sigma, "first argument")->required();
  div_cmd->add_option("--sigma2", d_sigma2, "second argument")->required();
  div_cmd->add_flag("--dual", d_dual, "evaluate the dual divergence D*");
  div_cmd->callback([&]() {
    action = [&]() {
      const SpdMatrix s1 = parse_spd(d_sigma, "--sigma");
      const SpdMatrix s2 = parse_spd(d_sigma2, "--sigma2");
      spdgeom::DivergenceSpec spec = spdgeom::DivergenceSpec::ab(d_alpha, d_beta);
      if (!d_uv.empty()) {
        std::stringstream ss(d_uv);
        std::string un, vn;
        if (!std::getline(ss, un, ',') || !std::getline(ss, vn)) {
          throw spdgeom::ParseError("--uv expects u,v");
        }
        spec = spdgeom::DivergenceSpec::uv(parse_scalar_function(un),
                                           parse_scalar_function(vn));
      }
      print_value(d_dual ? spdgeom::dual_divergence(spec, s1, s2)
                         : spdgeom::divergence(spec, s1, s2));
    };
  });

  // eval distance
  auto* dist_cmd = eval_cmd->add_subcommand(
      "distance", "closed-form Riemannian distance (flat or commuting MPE)");
  std::string t_mpe, t_power, t_name, t_sigma, t_sigma2;
  dist_cmd->add_option("--mpe", t_mpe, "MPE pair alpha,beta (commuting inputs)");
  dist_cmd->add_option("--power", t_power, "power-Euclidean exponent p");
  dist_cmd->add_option("--name", t_name, "euclidean or log-euclidean");
  dist_cmd->add_option("--sigma", t_sigma, "first point")->required();
  dist_cmd->add_option("--sigma2", t_sigma2, "second point")->required();
  dist_cmd->callback([&]() {
    action = [&]() {
      const SpdMatrix s1 = parse_spd(t_sigma, "--sigma");
      const SpdMatrix s2 = parse_spd(t_sigma2, "--sigma2");
      if (!t_mpe.empty()) {
        const auto [a, b] = parse_pair(t_mpe, "--mpe");
        print_value(spdgeom::mpe_distance_commuting(spdgeom::MpePair{a, b}, s1, s2));
        return;
      }
      spdgeom::MetricHandle handle = spdgeom::MetricHandle::euclidean();
      if (!t_power.empty()) {
        const auto p = parse_number_list(t_power, "--power");
        if (p.size() != 1) throw spdgeom::ParseError("--power expects one exponent");
        handle = spdgeom::MetricHandle::power_euclidean(p[0]);
      } else if (t_name == "log-euclidean") {
        handle = spdgeom::MetricHandle::log_euclidean();
      } else if (t_name != "euclidean" && !t_name.empty()) {
        throw spdgeom::ParseError("distance --name supports euclidean and log-euclidean");
      }
      print_value(spdgeom::deformed_distance(handle, s1, s2));
    };
  });

  // eval curvature
  auto* curv_cmd = eval_cmd->add_subcommand(
      "curvature", "sectional curvature kappa(X, Y), or R(X,Y,Z,T) when Z,T given");
  std::string c_mpe, c_me, c_sigma, c_x, c_y, c_z, c_t;
  curv_cmd->add_option("--mpe", c_mpe, "MPE pair alpha,beta");
  curv_cmd->add_option("--me", c_me, "ME pair u,v");
  curv_cmd->add_option("--sigma", c_sigma, "base point")->required();
  curv_cmd->add_option("--x", c_x, "tangent vector X")->required();
  curv_cmd->add_option("--y", c_y, "tangent vector Y")->required();
  curv_cmd->add_option("--z", c_z, "tangent vector Z");
  curv_cmd->add_option("--t", c_t, "tangent vector T");
  curv_cmd->callback([&]() {
    action = [&]() {
      const auto metric = parse_me_metric(c_mpe, c_me);
      const SpdMatrix sigma = parse_spd(c_sigma, "--sigma");
      const Matrix x = parse_matrix(c_x, "--x");
      const Matrix y = parse_matrix(c_y, "--y");
      if (c_z.empty() != c_t.empty()) {
        throw spdgeom::ParseError("curvature needs both --z and --t, or neither");
      }
      if (!c_z.empty()) {
        const Matrix z = parse_matrix(c_z, "--z");
        const Matrix t = parse_matrix(c_t, "--t");
        print_value(spdgeom::me_curvature(metric, sigma, x, y, z, t));
        return;
      }
      print_value(spdgeom::sectional_curvature(metric, sigma, x, y));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    action();
  } catch (const spdgeom::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const spdgeom::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
