#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "specest/graph.hpp"
#include "specest/oracle.hpp"
#include "support/test_support.hpp"

using namespace specest;

namespace {

Graph triangle() {
  return Graph::from_edges({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}, 3);
}

Graph single_edge() { return Graph::from_edges({{0, 1, 1}}, 2); }

Graph cycle4() {
  return Graph::from_edges({{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}}, 4);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("spectra of small graphs") {
  const Spectrum edge = exact_spectrum(single_edge());
  CHECK(edge.eigs[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(edge.eigs[1] == doctest::Approx(2.0));

  const Spectrum tri = exact_spectrum(triangle());
  CHECK(tri.eigs[0] <= 1e-8);
  CHECK(tri.eigs[1] == doctest::Approx(3.0));
  CHECK(tri.eigs[2] == doctest::Approx(3.0));

  const Spectrum c4 = exact_spectrum(cycle4());
  CHECK(c4.eigs[0] <= 1e-8);
  CHECK(c4.eigs[1] == doctest::Approx(2.0));
  CHECK(c4.eigs[2] == doctest::Approx(2.0));
  CHECK(c4.eigs[3] == doctest::Approx(4.0));
}

TEST_CASE("eigenvalue sum equals trace") {
  RngStream rng(SeedKey(21));
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = test_support::random_graph(rng, 25);
    const Spectrum spec = exact_spectrum(g);
    const double trace =
        std::accumulate(g.degrees().begin(), g.degrees().end(), 0.0);
    const double sum =
        std::accumulate(spec.eigs.begin(), spec.eigs.end(), 0.0);
    CHECK(std::abs(sum - trace) <= 1e-8 * std::max(1.0, trace));
  }
}

TEST_CASE("exact cdf") {
  const Spectrum c4 = exact_spectrum(cycle4());
  CHECK(exact_cdf(c4, -0.5) == 0.0);
  CHECK(exact_cdf(c4, 100.0) == 1.0);
  CHECK(exact_cdf(c4, 2.0) == doctest::Approx(0.75));
}

TEST_CASE("exact h limits and dense-power agreement") {
  const Spectrum edge = exact_spectrum(single_edge());
  CHECK(exact_h(edge, 2.0, 1) == doctest::Approx(0.75));
  CHECK(exact_h(edge, 2.0, 2) == doctest::Approx(0.625));
  // Large-q limit: 1 - h <= k * lambda_max / q, far below 1e-6 here.
  for (int k = 1; k <= 3; ++k) {
    const double gap = 1.0 - exact_h(edge, 1e9, k);
    CHECK(gap >= 0.0);
    CHECK(gap <= k * 2.0 / 1e9);
    CHECK(gap <= 1e-6);
  }

  RngStream rng(SeedKey(22));
  const Graph g = test_support::random_graph(rng, 12);
  const Spectrum spec = exact_spectrum(g);
  const double q = 1.7;
  const Eigen::MatrixXd kernel = marginal_kernel(g, q);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(g.node_count(), g.node_count());
  for (int k = 1; k <= 3; ++k) {
    power = power * kernel;
    CHECK(std::abs(exact_h(spec, q, k) - power.trace() / g.node_count()) <=
          1e-10);
  }
}

TEST_CASE("marginal kernel examples") {
  const Graph empty = Graph::from_edges({}, 3);
  CHECK(marginal_kernel(empty, 2.0).isApprox(Eigen::MatrixXd::Identity(3, 3),
                                             1e-12));

  const Eigen::MatrixXd k = marginal_kernel(single_edge(), 2.0);
  CHECK(k(0, 0) == doctest::Approx(0.75));
  CHECK(k(0, 1) == doctest::Approx(0.25));
  CHECK(k(1, 0) == doctest::Approx(0.25));
  CHECK(k(1, 1) == doctest::Approx(0.75));

  RngStream rng(SeedKey(23));
  const Graph g = test_support::random_graph(rng, 15);
  const Eigen::MatrixXd kq = marginal_kernel(g, 0.8);
  for (Eigen::Index i = 0; i < kq.rows(); ++i) {
    CHECK(kq.row(i).sum() == doctest::Approx(1.0).epsilon(1e-10));
    for (Eigen::Index j = 0; j < kq.cols(); ++j) CHECK(kq(i, j) >= -1e-12);
  }
}

TEST_CASE("forest enumeration on the single edge") {
  const ForestDistribution dist = enumerate_forests(single_edge(), 2.0);
  REQUIRE(dist.entries.size() == 3);
  CHECK(dist.z_q == doctest::Approx(8.0));
  std::map<std::string, double> probs;
  for (const auto& e : dist.entries)
    probs[test_support::forest_key(e.parent)] = e.probability;
  CHECK(probs.at("0,1,") == doctest::Approx(0.5));   // both nodes rooted
  CHECK(probs.at("0,0,") == doctest::Approx(0.25));  // tree rooted at 0
  CHECK(probs.at("1,1,") == doctest::Approx(0.25));  // tree rooted at 1
}

TEST_CASE("edgeless enumeration is a point mass") {
  const Graph g = Graph::from_edges({}, 2);
  const ForestDistribution dist = enumerate_forests(g, 3.0);
  REQUIRE(dist.entries.size() == 1);
  CHECK(dist.entries[0].probability == doctest::Approx(1.0));
}

TEST_CASE("enumeration matches spectral identities") {
  RngStream rng(SeedKey(24));
  for (int trial = 0; trial < 8; ++trial) {
    const Graph g = test_support::random_graph(rng, 5);
    const Spectrum spec = exact_spectrum(g);
    for (double q : {0.5, 1.0, 2.5}) {
      const ForestDistribution dist = enumerate_forests(g, q);

      double prob_sum = 0.0, mean_roots = 0.0;
      for (const auto& e : dist.entries) {
        prob_sum += e.probability;
        std::size_t roots = 0;
        for (NodeId i = 0; i < e.parent.size(); ++i)
          if (e.parent[i] == i) ++roots;
        mean_roots += e.probability * roots;
      }
      CHECK(prob_sum == doctest::Approx(1.0).epsilon(1e-10));

      double expected_roots = 0.0;
      for (double lambda : spec.eigs) expected_roots += q / (q + lambda);
      CHECK(std::abs(mean_roots - expected_roots) <= 1e-10);

      // Matrix-forest identity: the weight sum is det(q I + L).
      double det = 1.0;
      for (double lambda : spec.eigs) det *= q + lambda;
      CHECK(dist.z_q == doctest::Approx(det).epsilon(1e-8));

      // E[M(phi)] entrywise equals the marginal kernel.
      const std::size_t n = g.node_count();
      Eigen::MatrixXd mean_m = Eigen::MatrixXd::Zero(n, n);
      for (const auto& e : dist.entries) {
        std::vector<NodeId> root(n);
        for (NodeId i = 0; i < n; ++i) {
          NodeId r = i;
          while (e.parent[r] != r) r = e.parent[r];
          root[i] = r;
        }
        for (NodeId i = 0; i < n; ++i) mean_m(i, root[i]) += e.probability;
      }
      CHECK((mean_m - marginal_kernel(g, q)).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("size caps") {
  CHECK_THROWS_AS(enumerate_forests(grid2d_graph(3, 3), 1.0),
                  std::runtime_error);
}

}  // TEST_SUITE
