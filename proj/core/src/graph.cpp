#include "specest/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace specest {

namespace {

std::string edge_label(std::size_t index, const Edge& e) {
  std::ostringstream os;
  os << "edge " << index << " (" << e.u << ", " << e.v << ", " << e.weight
     << ")";
  return os.str();
}

}  // namespace

Graph Graph::from_edges(const EdgeList& edges, std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> normalized;
  normalized.reserve(edges.size());
  for (std::size_t idx = 0; idx < edges.size(); ++idx) {
    const Edge& e = edges[idx];
    if (e.u >= n || e.v >= n)
      throw std::invalid_argument(edge_label(idx, e) +
                                  ": node id out of range for n = " +
                                  std::to_string(n));
    if (e.u == e.v)
      throw std::invalid_argument(edge_label(idx, e) + ": self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument(edge_label(idx, e) + ": nonpositive weight");
    normalized.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  {
    auto sorted = normalized;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw std::invalid_argument("duplicate edge (" +
                                  std::to_string(dup->first) + ", " +
                                  std::to_string(dup->second) + ")");
  }

  Graph g;
  g.edge_count_ = edges.size();
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : normalized) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];

  g.neighbors_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t idx = 0; idx < edges.size(); ++idx) {
    const auto [u, v] = normalized[idx];
    const double w = edges[idx].weight;
    g.neighbors_[cursor[u]++] = {v, w};
    g.neighbors_[cursor[v]++] = {u, w};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.neighbors_.begin() + g.offsets_[i],
              g.neighbors_.begin() + g.offsets_[i + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  }

  g.degrees_.assign(n, 0.0);
  g.unit_weights_ = true;
  double degree_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (const Neighbor& nb : g.neighbors(static_cast<NodeId>(i))) {
      d += nb.weight;
      if (nb.weight != 1.0) g.unit_weights_ = false;
    }
    g.degrees_[i] = d;
    degree_sum += d;
    g.max_degree_ = std::max(g.max_degree_, d);
  }
  g.mean_degree_ = n > 0 ? degree_sum / static_cast<double>(n) : 0.0;
  return g;
}

void Graph::laplacian_matvec(std::span<const double> x,
                             std::span<double> y) const {
  const std::size_t n = node_count();
  if (x.size() != n || y.size() != n)
    throw std::invalid_argument("laplacian_matvec: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    // Accumulate A x in the same order degrees were summed, so L * 1 == 0
    // holds exactly.
    double ax = 0.0;
    for (std::size_t t = offsets_[i]; t < offsets_[i + 1]; ++t)
      ax += neighbors_[t].weight * x[neighbors_[t].id];
    y[i] = degrees_[i] * x[i] - ax;
  }
}

std::vector<double> Graph::laplacian_matvec(std::span<const double> x) const {
  std::vector<double> y(node_count());
  laplacian_matvec(x, y);
  return y;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count_ != b.edge_count_)
    return false;
  if (a.offsets_ != b.offsets_) return false;
  for (std::size_t t = 0; t < a.neighbors_.size(); ++t) {
    if (a.neighbors_[t].id != b.neighbors_[t].id ||
        a.neighbors_[t].weight != b.neighbors_[t].weight)
      return false;
  }
  return true;
}

EdgeList to_edges(const Graph& g) {
  EdgeList edges;
  edges.reserve(g.edge_count());
  const std::size_t n = g.node_count();
  for (NodeId i = 0; i < n; ++i) {
    for (const Graph::Neighbor& nb : g.neighbors(i)) {
      if (i < nb.id) edges.push_back({i, nb.id, nb.weight});
    }
  }
  return edges;
}

Graph grid2d_graph(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("grid2d_graph: zero dimension");
  EdgeList edges;
  edges.reserve(2 * rows * cols);
  auto id = [cols](std::size_t r, std::size_t c) {
    return static_cast<NodeId>(r * cols + c);
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  }
  return Graph::from_edges(edges, rows * cols);
}

Graph erdos_renyi_graph(std::size_t n, double mean_degree, SeedKey seed) {
  if (n < 2) throw std::invalid_argument("erdos_renyi_graph: need n >= 2");
  if (!(mean_degree > 0.0) || mean_degree >= static_cast<double>(n - 1))
    throw std::invalid_argument(
        "erdos_renyi_graph: need 0 < mean_degree < n - 1");
  const double p = mean_degree / static_cast<double>(n - 1);
  RngStream rng(seed);
  EdgeList edges;
  edges.reserve(static_cast<std::size_t>(mean_degree * n / 2 * 1.2) + 16);
  const double log1mp = std::log1p(-p);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Geometric skipping over the row i < j.
    std::size_t j = i;
    while (true) {
      const double u = 1.0 - rng.next_double();  // (0, 1]
      j += 1 + static_cast<std::size_t>(std::floor(std::log(u) / log1mp));
      if (j >= n) break;
      edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0});
    }
  }
  return Graph::from_edges(edges, n);
}

Graph barabasi_albert_graph(std::size_t n, std::size_t attach, SeedKey seed) {
  if (attach < 1 || 2 * attach >= n)
    throw std::invalid_argument(
        "barabasi_albert_graph: need 1 <= attach and 2 * attach < n");
  RngStream rng(seed);
  EdgeList edges;
  edges.reserve(attach * n);
  // Complete graph on the first attach + 1 nodes.
  for (NodeId u = 0; u + 1 <= attach; ++u)
    for (NodeId v = u + 1; v <= attach; ++v) edges.push_back({u, v, 1.0});

  // One entry per degree unit; sampling an index uniformly is sampling a
  // node proportionally to its degree.
  std::vector<NodeId> degree_pool;
  degree_pool.reserve(2 * attach * n);
  for (NodeId u = 0; u <= attach; ++u)
    for (std::size_t k = 0; k < attach; ++k) degree_pool.push_back(u);

  std::vector<NodeId> chosen;
  chosen.reserve(attach);
  for (std::size_t v = attach + 1; v < n; ++v) {
    chosen.clear();
    while (chosen.size() < attach) {
      const NodeId t = degree_pool[rng.next_below(
          static_cast<std::uint32_t>(degree_pool.size()))];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
        chosen.push_back(t);
    }
    for (NodeId t : chosen) {
      edges.push_back({static_cast<NodeId>(v), t, 1.0});
      degree_pool.push_back(t);
      degree_pool.push_back(static_cast<NodeId>(v));
    }
  }
  return Graph::from_edges(edges, n);
}

Graph read_edgelist(std::istream& in, std::string_view name) {
  EdgeList edges;
  std::size_t declared_nodes = 0;
  bool have_declared = false;
  NodeId max_id = 0;
  bool any_edge = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    std::string body = hash == std::string::npos ? line : line.substr(0, hash);
    if (hash != std::string::npos) {
      // Recognize the "# nodes N" directive.
      std::istringstream cs(line.substr(hash + 1));
      std::string word;
      if (cs >> word && word == "nodes") {
        std::size_t count = 0;
        if (cs >> count) {
          declared_nodes = count;
          have_declared = true;
        }
      }
    }
    std::istringstream ls(body);
    unsigned long long u = 0, v = 0;
    double w = 0.0;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v >> w)) {
      throw std::runtime_error(std::string(name) + ":" +
                               std::to_string(line_no) +
                               ": expected 'u v w'");
    }
    std::string extra;
    if (ls >> extra)
      throw std::runtime_error(std::string(name) + ":" +
                               std::to_string(line_no) +
                               ": trailing tokens after 'u v w'");
    if (u == v)
      throw std::runtime_error(std::string(name) + ":" +
                               std::to_string(line_no) + ": self-loop");
    if (!(w > 0.0))
      throw std::runtime_error(std::string(name) + ":" +
                               std::to_string(line_no) +
                               ": nonpositive weight");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
    max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
    any_edge = true;
  }
  std::size_t n = have_declared ? declared_nodes
                                : (any_edge ? static_cast<std::size_t>(max_id) + 1
                                            : 0);
  try {
    return Graph::from_edges(edges, n);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string(name) + ": " + e.what());
  }
}

Graph read_edgelist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string() + " for reading");
  return read_edgelist(in, path.string());
}

void write_edgelist(const Graph& g, std::ostream& out) {
  out << "# nodes " << g.node_count() << "\n";
  char buf[64];
  for (const Edge& e : to_edges(g)) {
    std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", e.u, e.v, e.weight);
    out << buf;
  }
}

void write_edgelist(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_edgelist(g, out);
}

}  // namespace specest
