#include "bench_run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>

#include "cli_runner.hpp"
#include "svg_plot.hpp"

namespace specest::cli {

namespace {

Graph build_graph(const BenchGraphSpec& spec, SeedKey seed) {
  if (spec.kind == "grid2d") return grid2d_graph(spec.rows, spec.cols);
  if (spec.kind == "er")
    return erdos_renyi_graph(spec.n, spec.mean_degree, seed);
  return barabasi_albert_graph(spec.n, spec.attach, seed);
}

struct Accumulator {
  std::vector<double> errors, normtimes, walls;

  void add(std::optional<double> error, double normtime, double wall) {
    if (error) errors.push_back(*error);
    normtimes.push_back(normtime);
    walls.push_back(wall);
  }
};

void fill_stats(const std::vector<double>& xs, double& mean, double& stderr_) {
  if (xs.empty()) {
    mean = stderr_ = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  stderr_ = xs.size() > 1
                ? std::sqrt(ss / (xs.size() - 1) / static_cast<double>(xs.size()))
                : 0.0;
}

std::string series_color(const std::string& method) {
  if (method == "forests") return "#1f77b4";
  if (method == "poly") return "#ff7f0e";
  if (method == "slq") return "#2ca02c";
  return "#9467bd";
}

}  // namespace

double time_to_target(const std::vector<std::pair<double, double>>& curve,
                      double target) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (curve.empty()) return nan;
  if (curve.front().second <= target) return curve.front().first;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const auto [t0, e0] = curve[i - 1];
    const auto [t1, e1] = curve[i];
    if (e1 <= target && e0 > target) {
      if (!(e0 > 0.0) || !(e1 > 0.0) || !(t0 > 0.0) || !(t1 > 0.0) ||
          e0 == e1)
        return t1;
      const double f = (std::log(e0) - std::log(target)) /
                       (std::log(e0) - std::log(e1));
      return std::exp(std::log(t0) + f * (std::log(t1) - std::log(t0)));
    }
  }
  return nan;
}

BenchOutput run_bench(const BenchConfig& cfg, const std::string& out_prefix) {
  BenchOutput output;
  const SeedKey base(cfg.seed);
  ReconstructOptions rec_options;
  rec_options.isotonic = cfg.isotonic;

  for (std::size_t fi = 0; fi < cfg.graphs.size(); ++fi) {
    const BenchGraphSpec& spec = cfg.graphs[fi];
    const std::string family = spec.label();
    std::map<std::pair<std::string, int>, Accumulator> cells;
    std::vector<double> floor_errors;

    for (int ri = 0; ri < cfg.graph_realizations; ++ri) {
      const SeedKey graph_seed = base.derive(fi).derive(ri);
      const Graph g = build_graph(spec, graph_seed);
      const double matvec =
          measure_matvec_seconds(g, graph_seed.derive(1).value());

      std::optional<Spectrum> spectrum;
      if (g.node_count() <= cfg.oracle_cap) {
        spectrum = exact_spectrum(g);
        const auto grid =
            make_q_grid(g.mean_degree(), g.max_degree(), cfg.alpha, cfg.n_lambda);
        const MethodResult floor = run_exact_moments(
            *spectrum, grid, cfg.l, g.max_degree(), rec_options);
        floor_errors.push_back(cdf_error(floor.estimate, *spectrum));
      } else if (ri == 0) {
        output.warnings.push_back(family +
                                  ": n exceeds oracle_cap, error columns "
                                  "skipped");
        std::cerr << "warning: " << output.warnings.back() << "\n";
      }

      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        const BenchMethodSpec& method = cfg.methods[mi];
        for (std::size_t pi = 0; pi < method.sweep.size(); ++pi) {
          for (int rep = 0; rep < cfg.repetitions; ++rep) {
            const std::uint64_t run_seed = base.derive(0x62656e63)
                                               .derive(fi)
                                               .derive(ri)
                                               .derive(mi)
                                               .derive(pi)
                                               .derive(rep)
                                               .value();
            MethodResult result;
            if (method.name == "forests") {
              EstimatorConfig est;
              est.alpha = cfg.alpha;
              est.n_lambda = cfg.n_lambda;
              est.l = cfg.l;
              est.s = method.sweep[pi];
              est.seed = run_seed;
              result = run_forests(g, est, rec_options);
            } else {
              BaselineConfig bl;
              bl.p = method.sweep[pi];
              bl.r = cfg.r;
              bl.seed = run_seed;
              bl.tau_grid = make_q_grid(g.mean_degree(), g.max_degree(),
                                        cfg.alpha, cfg.n_lambda);
              result = method.name == "poly" ? run_poly(g, bl)
                                             : run_slq(g, bl);
            }
            std::optional<double> error;
            if (spectrum) error = cdf_error(result.estimate, *spectrum);
            const double wall = result.timings.estimation_seconds;
            cells[{method.name, method.sweep[pi]}].add(error, wall / matvec,
                                                       wall);
          }
        }
      }
    }

    // Aggregate cells into rows, keeping the configured method order.
    std::vector<PlotSeries> series;
    for (const BenchMethodSpec& method : cfg.methods) {
      PlotSeries plot;
      plot.label = method.name;
      plot.color = series_color(method.name);
      plot.dashed = method.name == "slq";
      std::vector<std::pair<double, double>> norm_curve, wall_curve;
      for (int param : method.sweep) {
        const Accumulator& acc = cells.at({method.name, param});
        BenchRow row;
        row.family = family;
        row.n = spec.kind == "grid2d" ? spec.rows * spec.cols : spec.n;
        row.method = method.name;
        row.param = param;
        row.have_error = !acc.errors.empty();
        fill_stats(acc.errors, row.mean_error, row.stderr_error);
        fill_stats(acc.normtimes, row.mean_normtime, row.stderr_normtime);
        fill_stats(acc.walls, row.mean_wall, row.stderr_wall);
        output.rows.push_back(row);
        if (row.have_error) {
          plot.points.push_back({row.mean_normtime, row.mean_error});
          norm_curve.emplace_back(row.mean_normtime, row.mean_error);
          wall_curve.emplace_back(row.mean_wall, row.mean_error);
        }
      }
      if (!plot.points.empty()) series.push_back(std::move(plot));

      BenchTargetRow target;
      target.family = family;
      target.n = spec.kind == "grid2d" ? spec.rows * spec.cols : spec.n;
      target.method = method.name;
      target.target_error = cfg.target_error;
      target.normtime_to_target = time_to_target(norm_curve, cfg.target_error);
      target.walltime_to_target = time_to_target(wall_curve, cfg.target_error);
      output.targets.push_back(target);
    }

    std::optional<double> floor_line;
    if (!floor_errors.empty()) {
      double mean = 0.0, se = 0.0;
      fill_stats(floor_errors, mean, se);
      floor_line = mean;
    }
    std::ofstream svg(out_prefix + "_" + family + ".svg");
    if (!svg)
      throw std::runtime_error("cannot write " + out_prefix + "_" + family +
                               ".svg");
    write_scatter_svg(svg, family, "time (matvec units)",
                      "mean absolute error", series, floor_line,
                      "exact-moments floor");
  }

  std::ofstream csv(out_prefix + ".csv");
  if (!csv) throw std::runtime_error("cannot write " + out_prefix + ".csv");
  csv << "family,n,method,param,mean_error,stderr_error,mean_normtime,"
         "stderr_normtime\n";
  char buf[256];
  for (const BenchRow& row : output.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%zu,%s,%d,%.17g,%.17g,%.17g,%.17g\n",
                  row.family.c_str(), row.n, row.method.c_str(), row.param,
                  row.mean_error, row.stderr_error, row.mean_normtime,
                  row.stderr_normtime);
    csv << buf;
  }

  std::ofstream target_csv(out_prefix + "_target.csv");
  if (!target_csv)
    throw std::runtime_error("cannot write " + out_prefix + "_target.csv");
  target_csv
      << "family,n,method,target_error,normtime_to_target,walltime_to_target\n";
  for (const BenchTargetRow& row : output.targets) {
    std::snprintf(buf, sizeof(buf), "%s,%zu,%s,%.17g,%.17g,%.17g\n",
                  row.family.c_str(), row.n, row.method.c_str(),
                  row.target_error, row.normtime_to_target,
                  row.walltime_to_target);
    target_csv << buf;
  }
  return output;
}

}  // namespace specest::cli
