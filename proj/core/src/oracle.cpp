#include "specest/oracle.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specest {

namespace {

Eigen::MatrixXd dense_laplacian(const Graph& g) {
  const std::size_t n = g.node_count();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (NodeId i = 0; i < n; ++i) {
    lap(i, i) = g.degree(i);
    for (const Graph::Neighbor& nb : g.neighbors(i)) lap(i, nb.id) = -nb.weight;
  }
  return lap;
}

}  // namespace

Spectrum exact_spectrum(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n > 5000)
    throw std::runtime_error("exact_spectrum: n exceeds the dense cap (5000)");
  if (n == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_laplacian(g),
                                                        Eigen::EigenvaluesOnly);
  Spectrum spec;
  spec.eigs.assign(solver.eigenvalues().data(),
                   solver.eigenvalues().data() + n);
  std::sort(spec.eigs.begin(), spec.eigs.end());

  const double scale = std::max(1.0, g.gershgorin_bound());
  const double tol = 1e-8 * scale;
  if (spec.eigs.front() < -tol)
    throw std::runtime_error("exact_spectrum: negative eigenvalue beyond tol");
  if (spec.eigs.back() > g.gershgorin_bound() + tol)
    throw std::runtime_error("exact_spectrum: eigenvalue above Gershgorin");
  for (double& lambda : spec.eigs) lambda = std::max(lambda, 0.0);
  return spec;
}

double exact_cdf(const Spectrum& spec, double tau) {
  if (spec.eigs.empty()) return 0.0;
  const auto it =
      std::upper_bound(spec.eigs.begin(), spec.eigs.end(), tau);
  return static_cast<double>(it - spec.eigs.begin()) /
         static_cast<double>(spec.eigs.size());
}

double exact_h(const Spectrum& spec, double q, int k) {
  if (!(q > 0.0)) throw std::invalid_argument("exact_h: need q > 0");
  if (k < 1) throw std::invalid_argument("exact_h: need k >= 1");
  if (spec.eigs.empty()) return 0.0;
  double total = 0.0;
  for (double lambda : spec.eigs) {
    const double x = q / (q + lambda);
    double p = 1.0;
    for (int j = 0; j < k; ++j) p *= x;
    total += p;
  }
  return total / static_cast<double>(spec.eigs.size());
}

Eigen::MatrixXd marginal_kernel(const Graph& g, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("marginal_kernel: need q > 0");
  const std::size_t n = g.node_count();
  if (n > 2000)
    throw std::runtime_error("marginal_kernel: n exceeds the dense cap (2000)");
  Eigen::MatrixXd shifted = dense_laplacian(g);
  shifted.diagonal().array() += q;
  return q * shifted.llt().solve(Eigen::MatrixXd::Identity(n, n));
}

namespace {

struct Enumerator {
  const Graph& g;
  double q;
  EdgeList edges;
  std::vector<int> component;  // union-find parent, path halving
  std::vector<char> chosen;
  ForestDistribution dist;

  explicit Enumerator(const Graph& graph, double killing)
      : g(graph), q(killing), edges(to_edges(graph)) {
    component.resize(g.node_count());
    chosen.assign(edges.size(), 0);
  }

  int find(std::vector<int>& uf, int x) const {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  }

  void recurse(std::size_t idx, std::vector<int> uf, double edge_weight) {
    if (idx == edges.size()) {
      emit(edge_weight);
      return;
    }
    const Edge& e = edges[idx];
    // Exclude the edge.
    recurse(idx + 1, uf, edge_weight);
    // Include it unless it closes a cycle.
    const int ru = find(uf, e.u);
    const int rv = find(uf, e.v);
    if (ru == rv) return;
    uf[ru] = rv;
    chosen[idx] = 1;
    recurse(idx + 1, uf, edge_weight * e.weight);
    chosen[idx] = 0;
  }

  void emit(double edge_weight) {
    const std::size_t n = g.node_count();
    // Adjacency of the picked forest edges.
    std::vector<std::vector<NodeId>> adj(n);
    for (std::size_t t = 0; t < edges.size(); ++t) {
      if (!chosen[t]) continue;
      adj[edges[t].u].push_back(edges[t].v);
      adj[edges[t].v].push_back(edges[t].u);
    }
    // Tree components in discovery order.
    std::vector<std::vector<NodeId>> trees;
    std::vector<char> seen(n, 0);
    for (NodeId i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::vector<NodeId> tree, stack{i};
      seen[i] = 1;
      while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        tree.push_back(u);
        for (NodeId v : adj[u])
          if (!seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
          }
      }
      trees.push_back(std::move(tree));
    }

    double weight = edge_weight;
    for (std::size_t t = 0; t < trees.size(); ++t) weight *= q;

    // Every choice of one root per tree is a distinct rooted forest.
    std::vector<std::size_t> pick(trees.size(), 0);
    while (true) {
      ForestOutcome outcome;
      outcome.parent.assign(n, 0);
      outcome.probability = weight;  // normalized later
      for (std::size_t t = 0; t < trees.size(); ++t) {
        const NodeId root = trees[t][pick[t]];
        outcome.parent[root] = root;
        // Orient tree edges toward the root.
        std::vector<NodeId> stack{root};
        std::vector<char> visited(n, 0);
        visited[root] = 1;
        while (!stack.empty()) {
          const NodeId u = stack.back();
          stack.pop_back();
          for (NodeId v : adj[u])
            if (!visited[v]) {
              visited[v] = 1;
              outcome.parent[v] = u;
              stack.push_back(v);
            }
        }
      }
      dist.entries.push_back(std::move(outcome));

      std::size_t t = 0;
      while (t < trees.size() && ++pick[t] == trees[t].size()) {
        pick[t] = 0;
        ++t;
      }
      if (t == trees.size()) break;
    }
  }
};

}  // namespace

ForestDistribution enumerate_forests(const Graph& g, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("enumerate_forests: need q > 0");
  if (g.node_count() > 8)
    throw std::runtime_error("enumerate_forests: n exceeds the cap (8)");

  Enumerator en(g, q);
  std::vector<int> uf(g.node_count());
  for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
  en.recurse(0, uf, 1.0);

  double z = 0.0;
  for (const ForestOutcome& o : en.dist.entries) z += o.probability;
  for (ForestOutcome& o : en.dist.entries) o.probability /= z;
  en.dist.z_q = z;
  std::sort(en.dist.entries.begin(), en.dist.entries.end(),
            [](const ForestOutcome& x, const ForestOutcome& y) {
              return x.parent < y.parent;
            });
  return en.dist;
}

}  // namespace specest
