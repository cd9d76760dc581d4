#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "specest/forest.hpp"
#include "specest/oracle.hpp"
#include "support/test_support.hpp"

using namespace specest;

namespace {

Graph single_edge() { return Graph::from_edges({{0, 1, 1}}, 2); }

Graph triangle() {
  return Graph::from_edges({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}, 3);
}

void check_forest_invariants(const Graph& g, const RootedForest& f) {
  const std::size_t n = g.node_count();
  REQUIRE(f.parent.size() == n);
  REQUIRE(f.root.size() == n);
  std::size_t roots = 0;
  for (NodeId i = 0; i < n; ++i) {
    // Idempotence of the root map.
    CHECK(f.root[f.root[i]] == f.root[i]);
    if (f.parent[i] == i) {
      ++roots;
      CHECK(f.root[i] == i);
    } else {
      // Tree edges come from the graph.
      bool found = false;
      for (const auto& nb : g.neighbors(i))
        if (nb.id == f.parent[i]) found = true;
      CHECK(found);
    }
    // Parent chains reach the root in fewer than n steps.
    NodeId x = i;
    std::size_t steps = 0;
    while (f.parent[x] != x && steps < n) {
      x = f.parent[x];
      ++steps;
    }
    CHECK(steps < n);
    CHECK(x == f.root[i]);
  }
  CHECK(roots == f.num_roots);
}

}  // namespace

TEST_SUITE("forest") {

TEST_CASE("edgeless graph yields all singletons") {
  const Graph g = Graph::from_edges({}, 6);
  RngStream rng(SeedKey(31));
  const RootedForest f = sample_forest(g, 0.7, rng);
  CHECK(f.num_roots == 6);
  for (NodeId i = 0; i < 6; ++i) {
    CHECK(f.parent[i] == i);
    CHECK(f.root[i] == i);
  }
}

TEST_CASE("q must be positive") {
  RngStream rng(SeedKey(32));
  CHECK_THROWS_AS(sample_forest(single_edge(), 0.0, rng),
                  std::invalid_argument);
}

TEST_CASE("structural invariants on random graphs") {
  RngStream rng(SeedKey(33));
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = test_support::random_graph(rng, 14);
    for (double q : {0.3, 1.0, 5.0}) {
      RngStream sample_rng(SeedKey(100 + trial).derive(std::uint64_t(q * 10)));
      const RootedForest f = sample_forest(g, q, sample_rng);
      check_forest_invariants(g, f);
    }
  }
}

TEST_CASE("determinism: same seed, same forest") {
  const Graph g = grid2d_graph(6, 6);
  RngStream a(SeedKey(77)), b(SeedKey(77));
  const RootedForest fa = sample_forest(g, 1.3, a);
  const RootedForest fb = sample_forest(g, 1.3, b);
  CHECK(fa.parent == fb.parent);
  CHECK(fa.root == fb.root);
}

TEST_CASE("single edge root-count law at q = 2") {
  // Three rooted forests with probabilities 1/2 (both roots) and 1/4 each.
  const Graph g = single_edge();
  const ForestSampler sampler(g);
  ForestSampler::Workspace ws;
  RngStream rng(SeedKey(34));
  const int samples = 100000;
  int two_roots = 0;
  for (int i = 0; i < samples; ++i) {
    const RootedForest f = sampler.sample(2.0, rng, ws);
    if (f.num_roots == 2) ++two_roots;
  }
  const double freq = static_cast<double>(two_roots) / samples;
  // 4 sigma around 1/2 with sigma = sqrt(0.25 / samples).
  CHECK(std::abs(freq - 0.5) <= 4.0 * std::sqrt(0.25 / samples));
}

TEST_CASE("triangle law matches enumeration by chi-square") {
  const Graph g = triangle();
  const double q = 1.0;
  const ForestDistribution dist = enumerate_forests(g, q);

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < dist.entries.size(); ++i)
    index[test_support::forest_key(dist.entries[i].parent)] = i;

  const ForestSampler sampler(g);
  ForestSampler::Workspace ws;
  RngStream rng(SeedKey(35));
  const int samples = 100000;
  std::vector<double> observed(dist.entries.size(), 0.0);
  for (int i = 0; i < samples; ++i) {
    const RootedForest f = sampler.sample(q, rng, ws);
    observed[index.at(test_support::forest_key(f.parent))] += 1.0;
  }
  std::vector<double> expected(dist.entries.size());
  for (std::size_t i = 0; i < dist.entries.size(); ++i)
    expected[i] = dist.entries[i].probability * samples;
  CHECK(test_support::chi_square_gof(observed, expected) > 0.001);
}

TEST_CASE("kernel unbiasedness: mean of M matches K_q entrywise") {
  const Graph g = triangle();
  const double q = 1.0;
  const Eigen::MatrixXd kernel = marginal_kernel(g, q);
  const int samples = 10000;
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(3, 3);
  const ForestSampler sampler(g);
  ForestSampler::Workspace ws;
  RngStream rng(SeedKey(36));
  for (int t = 0; t < samples; ++t) {
    const RootedForest f = sampler.sample(q, rng, ws);
    // Row-stochasticity of M: exactly one root per node, by construction.
    for (NodeId i = 0; i < 3; ++i) counts(i, f.root[i]) += 1.0;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double p = kernel(i, j);
      const double se = std::sqrt(p * (1.0 - p) / samples);
      CHECK(std::abs(counts(i, j) / samples - p) <= 4.0 * se);
    }
  }
}

TEST_CASE("mean root count matches the spectral sum") {
  const Graph g = grid2d_graph(4, 4);
  const Spectrum spec = exact_spectrum(g);
  for (double q : {0.5, 2.0}) {
    double expected = 0.0;
    for (double lambda : spec.eigs) expected += q / (q + lambda);

    const ForestSampler sampler(g);
    ForestSampler::Workspace ws;
    RngStream rng(SeedKey(37).derive(std::uint64_t(q * 2)));
    const int samples = 10000;
    std::vector<double> roots(samples);
    for (int t = 0; t < samples; ++t)
      roots[t] = static_cast<double>(sampler.sample(q, rng, ws).num_roots);
    const auto stats = test_support::summarize(roots);
    CHECK(std::abs(stats.mean - expected) <= 4.0 * stats.stderr_mean());
  }
}

TEST_CASE("root map views and composition") {
  const Graph g = Graph::from_edges({}, 5);
  RngStream rng(SeedKey(38));
  const RootedForest singletons = sample_forest(g, 1.0, rng);
  const auto map = root_map(singletons);
  for (NodeId i = 0; i < 5; ++i) CHECK(map[i] == i);

  // k copies of the identity compose to the identity.
  std::vector<RootedForest> forests{singletons, singletons, singletons};
  const auto composed = compose_root_maps(forests);
  for (NodeId i = 0; i < 5; ++i) CHECK(composed[i] == i);
  CHECK(fixed_point_fraction(composed) == doctest::Approx(1.0));
}

TEST_CASE("two-forest composition on the single edge") {
  RootedForest all_zero{1.0, {0, 0}, {0, 0}, 1};
  RootedForest all_one{1.0, {1, 1}, {1, 1}, 1};
  std::vector<RootedForest> forests{all_zero, all_one};
  const auto composed = compose_root_maps(forests);
  CHECK(composed[0] == 1);
  CHECK(composed[1] == 1);
  CHECK(fixed_point_fraction(composed) == doctest::Approx(0.5));

  // k = 1 reduces to the forest's own root map.
  const auto one = compose_root_maps(std::span<const RootedForest>(&all_zero, 1));
  CHECK(one[0] == 0);
  CHECK(one[1] == 0);

  RootedForest mismatched{1.0, {0, 1, 2}, {0, 1, 2}, 3};
  std::vector<RootedForest> bad{all_zero, mismatched};
  CHECK_THROWS_AS(compose_root_maps(bad), std::invalid_argument);
}

TEST_CASE("fixed point fraction basics") {
  std::vector<NodeId> identity(10);
  for (NodeId i = 0; i < 10; ++i) identity[i] = i;
  CHECK(fixed_point_fraction(identity) == doctest::Approx(1.0));

  std::vector<NodeId> constant(10, 3);
  CHECK(fixed_point_fraction(constant) == doctest::Approx(0.1));

  // For a single forest the fixed points are exactly the roots.
  const Graph g = grid2d_graph(3, 3);
  RngStream rng(SeedKey(39));
  const RootedForest f = sample_forest(g, 1.0, rng);
  CHECK(fixed_point_fraction(root_map(f)) ==
        doctest::Approx(static_cast<double>(f.num_roots) / 9.0));
}

TEST_CASE("debug dump format") {
  RootedForest f{1.0, {0, 0}, {0, 0}, 1};
  std::ostringstream os;
  write_forest(f, os);
  CHECK(os.str() == "0 0 0\n1 0 0\n");
}

}  // TEST_SUITE
