#include <benchmark/benchmark.h>

#include "specest/baselines.hpp"
#include "specest/maxent.hpp"
#include "specest/moments.hpp"
#include "specest/oracle.hpp"
#include "specest/reconstruct.hpp"

using namespace specest;

namespace {

const Graph& shared_graph() {
  static const Graph g = erdos_renyi_graph(1000, 20.0, SeedKey(3));
  return g;
}

BaselineConfig baseline_config(int p) {
  const Graph& g = shared_graph();
  BaselineConfig cfg;
  cfg.p = p;
  cfg.r = 5;
  cfg.tau_grid = make_q_grid(g.mean_degree(), g.max_degree(), 100.0, 15);
  return cfg;
}

void BM_KpmMoments(benchmark::State& state) {
  const BaselineConfig cfg = baseline_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto moments = kpm_moments(shared_graph(), cfg);
    benchmark::DoNotOptimize(moments.data());
  }
}
BENCHMARK(BM_KpmMoments)->Arg(10)->Arg(50);

void BM_SlqQuadratures(benchmark::State& state) {
  const BaselineConfig cfg = baseline_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto rules = slq_quadratures(shared_graph(), cfg);
    benchmark::DoNotOptimize(rules.data());
  }
}
BENCHMARK(BM_SlqQuadratures)->Arg(10)->Arg(50);

void BM_MaxEntFit(benchmark::State& state) {
  // Mid-grid moments of the shared graph, the typical reconstruction load.
  const Graph& g = shared_graph();
  const Spectrum spec = exact_spectrum(g);
  const auto grid = make_q_grid(g.mean_degree(), g.max_degree(), 100.0, 15);
  const MomentTable table = exact_moment_table(spec.eigs, grid, 3);
  const std::size_t iq = grid.size() / 2;
  MomentVector mv;
  mv.a = grid[iq] / (grid[iq] + 2.0 * g.max_degree());
  mv.b = 1.0;
  mv.m = {table.h(iq, 1), table.h(iq, 2), table.h(iq, 3)};
  for (auto _ : state) {
    const MaxEntModel model = fit_maxent(mv);
    benchmark::DoNotOptimize(model.psi);
  }
}
BENCHMARK(BM_MaxEntFit);

void BM_ReconstructCdf(benchmark::State& state) {
  const Graph& g = shared_graph();
  EstimatorConfig cfg;
  cfg.s = 5;
  const MomentTable table = estimate_moment_table(g, cfg);
  for (auto _ : state) {
    const SpectralCdfEstimate est = reconstruct_cdf(table, g.max_degree());
    benchmark::DoNotOptimize(est.points.data());
  }
}
BENCHMARK(BM_ReconstructCdf);

}  // namespace

BENCHMARK_MAIN();
