#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "specest/graph.hpp"
#include "specest/rng.hpp"

namespace specest {

/// A rooted spanning forest. parent[r] == r exactly for roots; root[i] is
/// the root of the tree containing i (so root is idempotent as a map).
struct RootedForest {
  double q = 0.0;
  std::vector<NodeId> parent;
  std::vector<NodeId> root;
  std::size_t num_roots = 0;

  std::size_t size() const { return parent.size(); }
};

/// Samples rooted spanning forests with probability proportional to
/// q^(#roots) * prod of tree-edge weights, via Wilson's algorithm run on
/// the graph augmented with an absorbing node tied to every vertex with
/// weight q: at node i the walk is killed (i becomes a root) with
/// probability q / (q + d_i), else moves to neighbor j with probability
/// w_ij / (q + d_i). Loop erasure is implicit in the per-node next-pointer
/// overwrite. Expected cost O(|E| / q) walk steps plus O(n).
class ForestSampler {
 public:
  struct Workspace {
    std::vector<NodeId> next;
    std::vector<std::uint8_t> in_forest;
  };

  explicit ForestSampler(const Graph& g);

  RootedForest sample(double q, RngStream& rng) const;
  RootedForest sample(double q, RngStream& rng, Workspace& ws) const;

  const Graph& graph() const { return *graph_; }

 private:
  NodeId pick_neighbor(NodeId u, RngStream& rng) const;

  const Graph* graph_;
  // Per-node cumulative neighbor weights; empty for unit-weight graphs,
  // where neighbor selection is a single uniform draw.
  std::vector<double> cumulative_;
  std::vector<std::size_t> offsets_;
};

/// One-shot convenience wrapper around ForestSampler.
RootedForest sample_forest(const Graph& g, double q, RngStream& rng);

/// The root map r_phi as an array view; fixed points are exactly the roots.
std::span<const NodeId> root_map(const RootedForest& f);

/// In-place composition step: map[i] <- root map of f applied to map[i].
void apply_root_map(const RootedForest& f, std::span<NodeId> map);

/// Composition r_{f_k} o ... o r_{f_1} applied to the identity;
/// forests[0] acts first. Cost O(k n).
std::vector<NodeId> compose_root_maps(std::span<const RootedForest> forests);

/// Fraction of indices with map[i] == i.
double fixed_point_fraction(std::span<const NodeId> map);

/// Debug dump, one "node parent root" line per node.
void write_forest(const RootedForest& f, std::ostream& out);

}  // namespace specest
