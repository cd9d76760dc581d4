#include "specest/forest.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace specest {

ForestSampler::ForestSampler(const Graph& g) : graph_(&g) {
  if (g.has_unit_weights()) return;
  const std::size_t n = g.node_count();
  offsets_.assign(n + 1, 0);
  for (NodeId i = 0; i < n; ++i)
    offsets_[i + 1] = offsets_[i] + g.neighbors(i).size();
  cumulative_.resize(offsets_[n]);
  for (NodeId i = 0; i < n; ++i) {
    double acc = 0.0;
    std::size_t t = offsets_[i];
    for (const Graph::Neighbor& nb : g.neighbors(i)) {
      acc += nb.weight;
      cumulative_[t++] = acc;
    }
  }
}

NodeId ForestSampler::pick_neighbor(NodeId u, RngStream& rng) const {
  const auto nbrs = graph_->neighbors(u);
  if (cumulative_.empty())
    return nbrs[rng.next_below(static_cast<std::uint32_t>(nbrs.size()))].id;
  const double target = rng.next_double() * graph_->degree(u);
  const double* first = cumulative_.data() + offsets_[u];
  const double* last = cumulative_.data() + offsets_[u + 1];
  const double* it = std::upper_bound(first, last, target);
  if (it == last) --it;  // guard the w == degree rounding edge
  return nbrs[static_cast<std::size_t>(it - first)].id;
}

RootedForest ForestSampler::sample(double q, RngStream& rng) const {
  Workspace ws;
  return sample(q, rng, ws);
}

RootedForest ForestSampler::sample(double q, RngStream& rng,
                                   Workspace& ws) const {
  if (!(q > 0.0)) throw std::invalid_argument("sample_forest: need q > 0");
  const Graph& g = *graph_;
  const std::size_t n = g.node_count();

  RootedForest f;
  f.q = q;
  f.parent.resize(n);
  f.root.resize(n);
  ws.next.resize(n);
  ws.in_forest.assign(n, 0);

  std::size_t roots = 0;
  for (NodeId start = 0; start < n; ++start) {
    if (ws.in_forest[start]) continue;
    // Random walk from `start` until it is killed or hits the forest.
    NodeId u = start;
    while (!ws.in_forest[u]) {
      const double d = g.degree(u);
      if (rng.next_double() * (q + d) < q) {
        ws.in_forest[u] = 1;
        f.parent[u] = u;
        f.root[u] = u;
        ++roots;
        break;
      }
      const NodeId v = pick_neighbor(u, rng);
      ws.next[u] = v;
      u = v;
    }
    // Retrace the loop-erased path and graft it onto the forest.
    const NodeId tree_root = f.root[u];
    NodeId x = start;
    while (!ws.in_forest[x]) {
      ws.in_forest[x] = 1;
      f.parent[x] = ws.next[x];
      f.root[x] = tree_root;
      x = ws.next[x];
    }
  }
  f.num_roots = roots;
  return f;
}

RootedForest sample_forest(const Graph& g, double q, RngStream& rng) {
  return ForestSampler(g).sample(q, rng);
}

std::span<const NodeId> root_map(const RootedForest& f) { return f.root; }

void apply_root_map(const RootedForest& f, std::span<NodeId> map) {
  if (map.size() != f.size())
    throw std::invalid_argument("apply_root_map: size mismatch");
  for (NodeId& m : map) m = f.root[m];
}

std::vector<NodeId> compose_root_maps(std::span<const RootedForest> forests) {
  if (forests.empty()) return {};
  const std::size_t n = forests.front().size();
  std::vector<NodeId> map(n);
  for (NodeId i = 0; i < n; ++i) map[i] = i;
  for (const RootedForest& f : forests) {
    if (f.size() != n)
      throw std::invalid_argument("compose_root_maps: mismatched node counts");
    apply_root_map(f, map);
  }
  return map;
}

double fixed_point_fraction(std::span<const NodeId> map) {
  if (map.empty()) return 1.0;
  std::size_t fixed = 0;
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] == static_cast<NodeId>(i)) ++fixed;
  return static_cast<double>(fixed) / static_cast<double>(map.size());
}

void write_forest(const RootedForest& f, std::ostream& out) {
  for (std::size_t i = 0; i < f.size(); ++i)
    out << i << ' ' << f.parent[i] << ' ' << f.root[i] << '\n';
}

}  // namespace specest
