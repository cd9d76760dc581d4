#include <benchmark/benchmark.h>

#include "specest/forest.hpp"
#include "specest/graph.hpp"
#include "specest/moments.hpp"

using namespace specest;

namespace {

Graph make_sparse_ba(std::size_t n) {
  return barabasi_albert_graph(n, 10, SeedKey(1));
}

void BM_LaplacianMatvec(benchmark::State& state) {
  const Graph g = make_sparse_ba(static_cast<std::size_t>(state.range(0)));
  std::vector<double> x(g.node_count(), 1.0), y(g.node_count());
  for (auto _ : state) {
    g.laplacian_matvec(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_LaplacianMatvec)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_SampleForest(benchmark::State& state) {
  const Graph g = make_sparse_ba(static_cast<std::size_t>(state.range(0)));
  const double q = g.mean_degree() / static_cast<double>(state.range(1));
  const ForestSampler sampler(g);
  ForestSampler::Workspace ws;
  RngStream rng(SeedKey(7));
  for (auto _ : state) {
    const RootedForest f = sampler.sample(q, rng, ws);
    benchmark::DoNotOptimize(f.num_roots);
  }
}
BENCHMARK(BM_SampleForest)
    ->Args({1000, 1})
    ->Args({1000, 10})
    ->Args({1000, 100})
    ->Args({10000, 100});

void BM_ComposeRootMaps(benchmark::State& state) {
  const Graph g = make_sparse_ba(static_cast<std::size_t>(state.range(0)));
  RngStream rng(SeedKey(9));
  const ForestSampler sampler(g);
  std::vector<RootedForest> forests;
  for (int k = 0; k < 3; ++k) forests.push_back(sampler.sample(1.0, rng));
  for (auto _ : state) {
    const auto composed = compose_root_maps(forests);
    benchmark::DoNotOptimize(composed.data());
  }
}
BENCHMARK(BM_ComposeRootMaps)->Arg(1000)->Arg(10000);

void BM_MomentTable(benchmark::State& state) {
  const Graph g = make_sparse_ba(1000);
  EstimatorConfig cfg;
  cfg.s = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const MomentTable table = estimate_moment_table(g, cfg);
    benchmark::DoNotOptimize(table.h_hat.data());
  }
}
BENCHMARK(BM_MomentTable)->Arg(1)->Arg(5);

}  // namespace
