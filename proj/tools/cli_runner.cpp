#include "cli_runner.hpp"

#include <algorithm>
#include <chrono>
#include <vector>

namespace specest::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

MethodResult run_forests(const Graph& g, const EstimatorConfig& cfg,
                         const ReconstructOptions& options) {
  MethodResult result;
  const auto t0 = Clock::now();
  MomentTable table = estimate_moment_table(g, cfg);
  result.timings.estimation_seconds = seconds_since(t0);

  const auto t1 = Clock::now();
  result.estimate = reconstruct_cdf(table, g.max_degree(), options);
  result.timings.reconstruction_seconds = seconds_since(t1);
  result.estimate.method = "forests";
  result.table = std::move(table);
  return result;
}

MethodResult run_poly(const Graph& g, const BaselineConfig& cfg) {
  MethodResult result;
  const auto t0 = Clock::now();
  const std::vector<double> moments = kpm_moments(g, cfg);
  result.timings.estimation_seconds = seconds_since(t0);

  const auto t1 = Clock::now();
  const std::vector<double> raw = kpm_combine(g, cfg, moments);
  result.timings.reconstruction_seconds = seconds_since(t1);

  result.estimate.method = "poly";
  for (std::size_t i = 0; i < cfg.tau_grid.size(); ++i)
    result.estimate.points.push_back({cfg.tau_grid[i],
                                      std::clamp(raw[i], 0.0, 1.0),
                                      PointStatus::ok, cfg.p});
  return result;
}

MethodResult run_slq(const Graph& g, const BaselineConfig& cfg) {
  MethodResult result;
  const auto t0 = Clock::now();
  const std::vector<RitzQuadrature> rules = slq_quadratures(g, cfg);
  result.timings.estimation_seconds = seconds_since(t0);

  const auto t1 = Clock::now();
  const std::vector<double> values = slq_combine(cfg, rules);
  result.timings.reconstruction_seconds = seconds_since(t1);

  result.estimate.method = "slq";
  for (std::size_t i = 0; i < cfg.tau_grid.size(); ++i)
    result.estimate.points.push_back({cfg.tau_grid[i],
                                      std::clamp(values[i], 0.0, 1.0),
                                      PointStatus::ok, cfg.p});
  return result;
}

MethodResult run_exact_cdf(const Spectrum& spec,
                           const std::vector<double>& grid) {
  MethodResult result;
  result.estimate.method = "exact";
  for (double q : grid)
    result.estimate.points.push_back(
        {q, exact_cdf(spec, q), PointStatus::exact, 0});
  return result;
}

MethodResult run_exact_moments(const Spectrum& spec,
                               const std::vector<double>& grid, int l,
                               double max_degree,
                               const ReconstructOptions& options) {
  MethodResult result;
  const auto t0 = Clock::now();
  MomentTable table = exact_moment_table(spec.eigs, grid, l);
  result.timings.estimation_seconds = seconds_since(t0);

  const auto t1 = Clock::now();
  result.estimate = reconstruct_cdf(table, max_degree, options);
  result.timings.reconstruction_seconds = seconds_since(t1);
  result.estimate.method = "exact-moments";
  result.table = std::move(table);
  return result;
}

double measure_matvec_seconds(const Graph& g, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  RngStream rng(SeedKey(seed).derive(0x6d617476));
  std::vector<double> x(n), y(n);
  for (double& v : x) v = 2.0 * rng.next_double() - 1.0;

  volatile double sink = 0.0;
  // Grow the batch until one measurement is comfortably above the clock
  // resolution, then take the median of 20 warm batches.
  std::size_t reps = 1;
  while (true) {
    const auto t0 = Clock::now();
    for (std::size_t r = 0; r < reps; ++r) {
      g.laplacian_matvec(x, y);
      sink = sink + y[0];
    }
    if (seconds_since(t0) >= 1e-4 || reps >= (1u << 22)) break;
    reps *= 2;
  }

  std::vector<double> samples;
  samples.reserve(20);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t0 = Clock::now();
    for (std::size_t r = 0; r < reps; ++r) {
      g.laplacian_matvec(x, y);
      sink = sink + y[0];
    }
    samples.push_back(seconds_since(t0) / static_cast<double>(reps));
  }
  std::nth_element(samples.begin(), samples.begin() + 10, samples.end());
  return samples[10];
}

}  // namespace specest::cli
