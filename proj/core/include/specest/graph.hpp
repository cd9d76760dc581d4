#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "specest/rng.hpp"

namespace specest {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  double weight;
};

using EdgeList = std::vector<Edge>;

/// Weighted undirected graph in adjacency-list (CSR) form. Immutable after
/// construction; safe for concurrent shared reads. The combinatorial
/// Laplacian L = D - A is represented implicitly through laplacian_matvec.
class Graph {
 public:
  struct Neighbor {
    NodeId id;
    double weight;
  };

  Graph() = default;

  /// Builds a graph from an undirected edge list over node ids [0, n).
  /// Rejects out-of-range ids, self-loops, nonpositive weights, and
  /// duplicate undirected pairs.
  static Graph from_edges(const EdgeList& edges, std::size_t n);

  std::size_t node_count() const {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Neighbor> neighbors(NodeId i) const {
    return {neighbors_.data() + offsets_[i],
            neighbors_.data() + offsets_[i + 1]};
  }

  /// Weighted degree d_i = sum of incident edge weights.
  double degree(NodeId i) const { return degrees_[i]; }
  const std::vector<double>& degrees() const { return degrees_; }
  double mean_degree() const { return mean_degree_; }
  double max_degree() const { return max_degree_; }
  bool has_unit_weights() const { return unit_weights_; }

  /// y = (D - A) x. Cost proportional to the number of edges.
  void laplacian_matvec(std::span<const double> x, std::span<double> y) const;
  std::vector<double> laplacian_matvec(std::span<const double> x) const;

  /// Upper bound on the largest Laplacian eigenvalue: 2 * max weighted degree.
  double gershgorin_bound() const { return 2.0 * max_degree_; }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<std::size_t> offsets_;   // n + 1
  std::vector<Neighbor> neighbors_;    // 2 |E|, each row sorted by id
  std::vector<double> degrees_;
  std::size_t edge_count_ = 0;
  double mean_degree_ = 0.0;
  double max_degree_ = 0.0;
  bool unit_weights_ = true;
};

/// Edges of g with u < v, sorted; inverse of Graph::from_edges.
EdgeList to_edges(const Graph& g);

/// Unit-weight rows x cols lattice with 4-neighbor connectivity.
Graph grid2d_graph(std::size_t rows, std::size_t cols);

/// G(n, p) with p = mean_degree / (n - 1). Requires 0 < mean_degree < n - 1.
Graph erdos_renyi_graph(std::size_t n, double mean_degree, SeedKey seed);

/// Preferential attachment: complete seed graph on attach + 1 nodes, then
/// each new node attaches to `attach` distinct existing nodes with
/// probability proportional to current degree. Mean degree ~ 2 * attach.
Graph barabasi_albert_graph(std::size_t n, std::size_t attach, SeedKey seed);

/// Text edge-list I/O. Lines are "u v w" with 0-based ids; '#' starts a
/// comment. The writer emits a "# nodes N" directive so graphs with
/// trailing isolated nodes round-trip; the reader honors it when present
/// and otherwise infers n = max id + 1.
Graph read_edgelist(std::istream& in, std::string_view name = "<stream>");
Graph read_edgelist(const std::filesystem::path& path);
void write_edgelist(const Graph& g, std::ostream& out);
void write_edgelist(const Graph& g, const std::filesystem::path& path);

}  // namespace specest
