#pragma once

#include <Eigen/Core>
#include <vector>

#include "specest/graph.hpp"

namespace specest {

/// Sorted Laplacian eigenvalues; eigs[0] is 0 up to solver tolerance and
/// every value is bounded by the Gershgorin estimate.
struct Spectrum {
  std::vector<double> eigs;

  std::size_t size() const { return eigs.size(); }
};

/// Dense symmetric eigendecomposition of L; desk scale only (n <= 5000).
Spectrum exact_spectrum(const Graph& g);

/// c(tau) = fraction of eigenvalues <= tau.
double exact_cdf(const Spectrum& spec, double tau);

/// h(q, k) = (1/n) sum_i (q / (q + lambda_i))^k.
double exact_h(const Spectrum& spec, double q, int k);

/// K_q = q (q I + L)^{-1}; row-stochastic with nonnegative entries
/// (n <= 2000).
Eigen::MatrixXd marginal_kernel(const Graph& g, double q);

/// One rooted spanning forest, canonically encoded by its parent array
/// (parent[r] == r for roots), with its probability under the killing-rate
/// q forest law.
struct ForestOutcome {
  std::vector<NodeId> parent;
  double probability;
};

/// Exhaustive distribution over rooted spanning forests, each weighted by
/// q^(#roots) * prod of tree-edge weights; z_q is the normalizing sum
/// (equal to det(q I + L) by the matrix-forest identity). n <= 8.
struct ForestDistribution {
  std::vector<ForestOutcome> entries;
  double z_q = 0.0;
};

ForestDistribution enumerate_forests(const Graph& g, double q);

}  // namespace specest
