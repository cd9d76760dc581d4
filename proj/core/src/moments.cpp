#include "specest/moments.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "specest/forest.hpp"

namespace specest {

std::vector<double> make_q_grid(double mean_degree, double max_degree,
                                double alpha, int n_lambda) {
  if (!(alpha > 0.0) || !(mean_degree > 0.0) || !(max_degree > 0.0))
    throw std::invalid_argument("make_q_grid: parameters must be positive");
  if (n_lambda < 1) throw std::invalid_argument("make_q_grid: n_lambda >= 1");
  const double q_min = mean_degree / alpha;
  const double q_max = 2.0 * max_degree;
  if (!(q_min < q_max))
    throw std::invalid_argument("make_q_grid: inverted bounds (q_min >= q_max)");
  std::vector<double> grid(n_lambda);
  if (n_lambda == 1) {
    grid[0] = q_min;
    return grid;
  }
  const double log_ratio = std::log(q_max / q_min);
  for (int i = 0; i < n_lambda; ++i)
    grid[i] = q_min * std::exp(log_ratio * i / (n_lambda - 1));
  grid.back() = q_max;  // inclusive endpoint, exact
  return grid;
}

MomentTable estimate_moment_table(const Graph& g, const EstimatorConfig& cfg) {
  if (cfg.l < 1 || cfg.s < 1)
    throw std::invalid_argument("estimate_moment_table: need l >= 1, s >= 1");
  const std::size_t n = g.node_count();
  if (n == 0)
    throw std::invalid_argument("estimate_moment_table: empty graph");

  MomentTable table;
  table.config = cfg;
  table.moment_order = cfg.l;
  table.replicates = cfg.s;
  table.node_count = n;
  if (g.max_degree() > 0.0) {
    table.q_values =
        make_q_grid(g.mean_degree(), g.max_degree(), cfg.alpha, cfg.n_lambda);
  } else {
    // Edgeless graph: no spectral range to span; keep a single nominal q.
    table.q_values.assign(1, 1.0);
  }
  const std::size_t nq = table.q_values.size();
  table.h_hat.assign(nq * cfg.l, 0.0);

  const ForestSampler sampler(g);
  ForestSampler::Workspace ws;
  std::vector<NodeId> composed(n);
  const SeedKey base(cfg.seed);

  for (int rep = 0; rep < cfg.s; ++rep) {
    const SeedKey rep_key = base.derive(static_cast<std::uint64_t>(rep));
    for (std::size_t iq = 0; iq < nq; ++iq) {
      const double q = table.q_values[iq];
      const SeedKey q_key = rep_key.derive(iq);
      for (NodeId i = 0; i < n; ++i) composed[i] = i;
      for (int k = 1; k <= cfg.l; ++k) {
        RngStream rng(q_key.derive(static_cast<std::uint64_t>(k - 1)));
        const RootedForest f = sampler.sample(q, rng, ws);
        apply_root_map(f, composed);
        table.h_hat[iq * cfg.l + (k - 1)] += fixed_point_fraction(composed);
      }
    }
  }
  table.var_bound.resize(table.h_hat.size());
  const double inv_s = 1.0 / static_cast<double>(cfg.s);
  for (std::size_t t = 0; t < table.h_hat.size(); ++t) {
    table.h_hat[t] *= inv_s;
    table.var_bound[t] = table.h_hat[t] / (static_cast<double>(n) * cfg.s);
  }
  return table;
}

MomentTable exact_moment_table(const std::vector<double>& eigs,
                               const std::vector<double>& q_values, int l) {
  if (l < 1) throw std::invalid_argument("exact_moment_table: need l >= 1");
  for (double lambda : eigs)
    if (lambda < 0.0)
      throw std::invalid_argument("exact_moment_table: negative eigenvalue");

  MomentTable table;
  table.exact = true;
  table.moment_order = l;
  table.replicates = 0;
  table.node_count = eigs.size();
  table.config.l = l;
  table.q_values = q_values;
  table.h_hat.assign(q_values.size() * l, 0.0);
  table.var_bound.assign(q_values.size() * l, 0.0);

  const double inv_n = eigs.empty() ? 0.0 : 1.0 / static_cast<double>(eigs.size());
  for (std::size_t iq = 0; iq < q_values.size(); ++iq) {
    const double q = q_values[iq];
    for (double lambda : eigs) {
      double x = q / (q + lambda);
      double power = 1.0;
      for (int k = 1; k <= l; ++k) {
        power *= x;
        table.h_hat[iq * l + (k - 1)] += power;
      }
    }
    for (int k = 1; k <= l; ++k) table.h_hat[iq * l + (k - 1)] *= inv_n;
  }
  return table;
}

void write_csv(const MomentTable& table, std::ostream& out) {
  out << "q,k,h_hat,var_bound\n";
  char buf[128];
  for (std::size_t iq = 0; iq < table.q_values.size(); ++iq) {
    for (int k = 1; k <= table.moment_order; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g,%d,%.17g,%.17g\n",
                    table.q_values[iq], k, table.h(iq, k), table.var(iq, k));
      out << buf;
    }
  }
}

std::string to_json(const MomentTable& table) {
  nlohmann::json j;
  j["config"] = {{"alpha", table.config.alpha},
                 {"n_lambda", table.config.n_lambda},
                 {"l", table.config.l},
                 {"s", table.config.s},
                 {"seed", table.config.seed}};
  j["exact"] = table.exact;
  j["node_count"] = table.node_count;
  j["replicates"] = table.replicates;
  j["q_values"] = table.q_values;
  auto rows = nlohmann::json::array();
  for (std::size_t iq = 0; iq < table.q_values.size(); ++iq) {
    auto h = nlohmann::json::array();
    auto v = nlohmann::json::array();
    for (int k = 1; k <= table.moment_order; ++k) {
      h.push_back(table.h(iq, k));
      v.push_back(table.var(iq, k));
    }
    rows.push_back({{"q", table.q_values[iq]}, {"h_hat", h}, {"var_bound", v}});
  }
  j["rows"] = rows;
  return j.dump(2);
}

}  // namespace specest
