#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "specest/graph.hpp"

namespace specest {

/// Estimation parameters. q ranges over a logarithmic grid from
/// mean_degree / alpha up to twice the max degree.
struct EstimatorConfig {
  double alpha = 100.0;
  int n_lambda = 15;
  int l = 3;       // highest moment order
  int s = 10;      // Monte Carlo replicates
  std::uint64_t seed = 0;
};

/// Monte Carlo (or exact) estimates of h(q, k) = (1/n) tr((q (qI+L)^-1)^k)
/// for each grid q and k = 1..l, with per-entry variance upper bounds.
struct MomentTable {
  std::vector<double> q_values;
  std::vector<double> h_hat;      // row-major [iq][k-1]
  std::vector<double> var_bound;  // h_hat / (n * s); zero for exact tables
  int moment_order = 0;
  int replicates = 0;
  std::size_t node_count = 0;
  EstimatorConfig config;
  bool exact = false;

  double h(std::size_t iq, int k) const {
    return h_hat[iq * moment_order + (k - 1)];
  }
  double var(std::size_t iq, int k) const {
    return var_bound[iq * moment_order + (k - 1)];
  }
};

/// n_lambda log-spaced values from mean_degree / alpha to 2 * max_degree
/// inclusive; a single-point grid degenerates to q_min.
std::vector<double> make_q_grid(double mean_degree, double max_degree,
                                double alpha, int n_lambda);

/// For each replicate and grid q, draws l independent forests and sets the
/// k-th moment estimate to the fixed-point fraction of the composition of
/// the first k root maps; averages over cfg.s replicates. Deterministic
/// given (cfg.seed, g), with a canonical reduction order over replicates.
MomentTable estimate_moment_table(const Graph& g, const EstimatorConfig& cfg);

/// Exact h(q, k) = (1/n) sum_i (q / (q + lambda_i))^k from a spectrum.
MomentTable exact_moment_table(const std::vector<double>& eigs,
                               const std::vector<double>& q_values, int l);

/// CSV with columns q, k, h_hat, var_bound.
void write_csv(const MomentTable& table, std::ostream& out);
/// JSON object with a config echo alongside the table.
std::string to_json(const MomentTable& table);

}  // namespace specest
