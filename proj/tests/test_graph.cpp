#include <doctest.h>

#include <cmath>
#include <sstream>

#include "specest/graph.hpp"
#include "specest/oracle.hpp"
#include "support/test_support.hpp"

using namespace specest;

TEST_SUITE("graph") {

TEST_CASE("triangle build computes symmetric degrees") {
  const Graph g = Graph::from_edges({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}, 3);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  for (NodeId i = 0; i < 3; ++i) CHECK(g.degree(i) == doctest::Approx(2.0));
  // Symmetry: each (i, j, w) has its mirror with identical weight.
  for (NodeId i = 0; i < 3; ++i) {
    for (const auto& nb : g.neighbors(i)) {
      bool mirrored = false;
      for (const auto& back : g.neighbors(nb.id))
        if (back.id == i && back.weight == nb.weight) mirrored = true;
      CHECK(mirrored);
    }
  }
}

TEST_CASE("single edge build") {
  const Graph g = Graph::from_edges({{0, 1, 1}}, 2);
  CHECK(g.degree(0) == 1.0);
  CHECK(g.degree(1) == 1.0);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("build rejections are distinct") {
  CHECK_THROWS_WITH_AS(Graph::from_edges({{0, 0, 1}}, 2),
                       doctest::Contains("self-loop"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(Graph::from_edges({{0, 5, 1}}, 2),
                       doctest::Contains("out of range"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(Graph::from_edges({{0, 1, -2}}, 2),
                       doctest::Contains("nonpositive weight"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(Graph::from_edges({{0, 1, 1}, {1, 0, 1}}, 2),
                       doctest::Contains("duplicate edge"),
                       std::invalid_argument);
}

TEST_CASE("laplacian matvec examples") {
  const Graph edge = Graph::from_edges({{0, 1, 1}}, 2);
  const auto y = edge.laplacian_matvec(std::vector<double>{1.0, -1.0});
  CHECK(y[0] == doctest::Approx(2.0));
  CHECK(y[1] == doctest::Approx(-2.0));

  const Graph path = Graph::from_edges({{0, 1, 1}, {1, 2, 1}}, 3);
  const auto z = path.laplacian_matvec(std::vector<double>{1.0, 0.0, 0.0});
  CHECK(z[0] == doctest::Approx(1.0));
  CHECK(z[1] == doctest::Approx(-1.0));
  CHECK(z[2] == doctest::Approx(0.0));

  CHECK_THROWS_AS(path.laplacian_matvec(std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("laplacian annihilates constants on random graphs") {
  RngStream rng(SeedKey(11));
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = test_support::random_graph(rng);
    const std::vector<double> ones(g.node_count(), 1.0);
    for (double v : g.laplacian_matvec(ones)) CHECK(std::abs(v) <= 1e-12);
  }
}

TEST_CASE("quadratic form is nonnegative") {
  RngStream rng(SeedKey(12));
  const Graph g = test_support::random_graph(rng, 15);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(g.node_count());
    for (double& v : x) v = 2.0 * rng.next_double() - 1.0;
    const auto lx = g.laplacian_matvec(x);
    double form = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) form += x[i] * lx[i];
    CHECK(form >= -1e-9);
  }
}

TEST_CASE("gershgorin bound examples and dominance") {
  CHECK(grid2d_graph(5, 5).gershgorin_bound() == doctest::Approx(8.0));

  const Graph edge = Graph::from_edges({{0, 1, 1}}, 2);
  CHECK(edge.gershgorin_bound() == doctest::Approx(2.0));
  const Spectrum edge_spec = exact_spectrum(edge);
  CHECK(edge_spec.eigs.back() == doctest::Approx(2.0));

  const Graph tri = Graph::from_edges({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}, 3);
  CHECK(tri.gershgorin_bound() == doctest::Approx(4.0));
  CHECK(exact_spectrum(tri).eigs.back() == doctest::Approx(3.0));

  RngStream rng(SeedKey(13));
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = test_support::random_graph(rng, 30);
    const Spectrum spec = exact_spectrum(g);
    CHECK(g.gershgorin_bound() + 1e-8 >= spec.eigs.back());
  }
}

TEST_CASE("grid generator shapes") {
  const Graph square = grid2d_graph(2, 2);
  CHECK(square.node_count() == 4);
  CHECK(square.edge_count() == 4);

  const Graph grid = grid2d_graph(5, 5);
  CHECK(grid.node_count() == 25);
  CHECK(grid.edge_count() == 40);

  const Graph path = grid2d_graph(1, 3);
  CHECK(path.node_count() == 3);
  CHECK(path.edge_count() == 2);
  CHECK(path.degree(1) == doctest::Approx(2.0));

  CHECK_THROWS_AS(grid2d_graph(0, 3), std::invalid_argument);
}

TEST_CASE("erdos-renyi generator") {
  const Graph g = erdos_renyi_graph(1000, 20.0, SeedKey(5));
  CHECK(g.node_count() == 1000);
  CHECK(g.mean_degree() == doctest::Approx(20.0).epsilon(0.1));

  const Graph again = erdos_renyi_graph(1000, 20.0, SeedKey(5));
  CHECK(g == again);

  const Graph dense = erdos_renyi_graph(500, 50.0, SeedKey(6));
  CHECK(dense.mean_degree() == doctest::Approx(50.0).epsilon(0.1));

  CHECK_THROWS_AS(erdos_renyi_graph(100, 99.5, SeedKey(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(erdos_renyi_graph(100, 0.0, SeedKey(1)),
                  std::invalid_argument);
}

TEST_CASE("barabasi-albert generator") {
  const Graph g = barabasi_albert_graph(1000, 10, SeedKey(7));
  CHECK(g.node_count() == 1000);
  CHECK(g.edge_count() == 55 + 989 * 10);
  CHECK(g.mean_degree() == doctest::Approx(20.0).epsilon(0.02));

  const Graph again = barabasi_albert_graph(1000, 10, SeedKey(7));
  CHECK(g == again);

  CHECK_THROWS_AS(barabasi_albert_graph(100, 99, SeedKey(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(barabasi_albert_graph(100, 0, SeedKey(1)),
                  std::invalid_argument);
}

TEST_CASE("generator invariants: degrees match incident weights") {
  RngStream rng(SeedKey(14));
  for (const Graph& g :
       {grid2d_graph(4, 6), erdos_renyi_graph(200, 8.0, SeedKey(2)),
        barabasi_albert_graph(200, 4, SeedKey(3)),
        test_support::random_graph(rng, 20)}) {
    for (NodeId i = 0; i < g.node_count(); ++i) {
      double sum = 0.0;
      for (const auto& nb : g.neighbors(i)) sum += nb.weight;
      CHECK(std::abs(sum - g.degree(i)) <= 1e-12 * std::max(1.0, sum));
    }
  }
}

TEST_CASE("edgelist io round trip") {
  std::istringstream single("0 1 1.0\n");
  const Graph g = read_edgelist(single);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);

  RngStream rng(SeedKey(15));
  for (int trial = 0; trial < 10; ++trial) {
    const Graph original = test_support::random_graph(rng, 20);
    std::stringstream buffer;
    write_edgelist(original, buffer);
    const Graph reread = read_edgelist(buffer);
    CHECK(original == reread);
  }

  // Trailing isolated node survives through the "# nodes" directive.
  const Graph isolated = Graph::from_edges({{0, 1, 1}}, 4);
  std::stringstream buffer;
  write_edgelist(isolated, buffer);
  CHECK(read_edgelist(buffer) == isolated);
}

TEST_CASE("edgelist parse errors carry line numbers") {
  std::istringstream selfloop("0 1 1.0\n0 0 1.0\n");
  CHECK_THROWS_WITH_AS(read_edgelist(selfloop, "input"),
                       doctest::Contains("input:2"), std::runtime_error);

  std::istringstream short_line("0 1\n");
  CHECK_THROWS_WITH_AS(read_edgelist(short_line, "input"),
                       doctest::Contains("input:1"), std::runtime_error);

  std::istringstream bad_weight("0 1 0.0\n");
  CHECK_THROWS_WITH_AS(read_edgelist(bad_weight, "input"),
                       doctest::Contains("nonpositive"), std::runtime_error);
}

}  // TEST_SUITE
